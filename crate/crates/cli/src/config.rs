//! `key=value` config files, merged into the argument list so that clap does
//! all validation and command-line flags take precedence.

use std::ffi::OsString;
use std::path::Path;

use thiserror::Error;

use crate::args::COMMAND_NAMES;

const GLOBAL_KEYS: [&str; 3] = ["seed", "json", "format"];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |reason: &str| ConfigError::Syntax { line: i + 1, reason: reason.into() };
        let (key, value) = line.split_once('=').ok_or_else(|| syntax("expected key=value"))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-') {
            return Err(syntax("invalid key"));
        }
        if key == "config" {
            return Err(syntax("config files cannot include other config files"));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

fn find_config(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            return None;
        }
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

fn explicit_flags(args: &[OsString]) -> Vec<String> {
    args.iter()
        .skip(1)
        .filter_map(|a| {
            let s = a.to_string_lossy();
            let name = s.strip_prefix("--")?;
            Some(name.split('=').next().unwrap_or(name).to_string())
        })
        .collect()
}

/// Inserts file values as flags: globals right after the program name,
/// command flags right after the subcommand. Keys also given as flags are
/// dropped, so flags override the file.
pub fn merge_config_args(args: Vec<OsString>) -> Result<Vec<OsString>, ConfigError> {
    let Some(path) = find_config(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|source| ConfigError::Read {
        path: path.to_string_lossy().into_owned(),
        source,
    })?;
    let explicit = explicit_flags(&args);
    let entries: Vec<_> = parse_config(&text)?.into_iter().filter(|(k, _)| !explicit.contains(k)).collect();
    let flag = |k: &str, v: &str| [OsString::from(format!("--{k}")), OsString::from(v)];
    let (globals, locals): (Vec<_>, Vec<_>) = entries.iter().partition(|(k, _)| GLOBAL_KEYS.contains(&k.as_str()));

    let mut out: Vec<OsString> = args.iter().take(1).cloned().collect();
    for (k, v) in &globals {
        out.extend(flag(k, v));
    }
    let rest = args.into_iter().skip(1);
    let mut inserted = false;
    for a in rest {
        let is_command = !inserted && COMMAND_NAMES.contains(&a.to_string_lossy().as_ref());
        out.push(a);
        if is_command {
            for (k, v) in &locals {
                out.extend(flag(k, v));
            }
            inserted = true;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_lines() {
        let c = parse_config("# comment\nseed = 7\n\nmax_n=12\n").unwrap();
        assert_eq!(c, vec![("seed".into(), "7".into()), ("max-n".into(), "12".into())]);
        assert!(parse_config("seed").is_err());
        assert!(parse_config("Seed=1").is_err());
        assert!(parse_config("config=x").is_err());
    }

    #[test]
    fn no_config_is_identity() {
        let a = os(&["sdmap", "classify", "--primes", "5"]);
        assert_eq!(merge_config_args(a.clone()).unwrap(), a);
    }

    #[test]
    fn flags_replace_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "seed=9\nprimes=3,5\n").unwrap();
        let p = path.to_string_lossy().to_string();
        let merged = merge_config_args(os(&["sdmap", "--config", &p, "classify", "--primes", "7"])).unwrap();
        assert_eq!(
            merged,
            os(&["sdmap", "--seed", "9", "--config", &p, "classify", "--primes", "7"])
        );
    }
}
