//! The `sdmap` command line: argument handling, config files and the JSON
//! envelope `{command, config, result, stats, exit_code}`.

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

pub mod args;
pub mod commands;
pub mod config;

use args::{Cli, Command, Format};
use commands::{Outcome, EXIT_PASS, EXIT_USAGE};

#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn usage(message: String) -> Self {
        RunOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

pub fn dispatch(command: &Command, seed: u64) -> Outcome {
    match command {
        Command::VerifySymbolic(a) => commands::verify_symbolic(a, seed),
        Command::Classify(a) => commands::classify(a, seed),
        Command::VerifyQuad(a) => commands::verify_quad(a, seed),
        Command::VerifyComplex(a) => commands::verify_complex_cmd(a, seed),
        Command::ApDemo(a) => commands::ap_demo(a, seed),
        Command::Counterexamples(a) => commands::counterexamples(a, seed),
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let raw: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let merged = match config::merge_config_args(raw) {
        Ok(m) => m,
        Err(e) => return RunOutput::usage(format!("error: {e}\n")),
    };
    let cli = match Cli::try_parse_from(merged) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    code: EXIT_PASS,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => RunOutput::usage(rendered),
            };
        }
    };

    let start = Instant::now();
    let outcome = dispatch(&cli.command, cli.seed);
    let mut stats = outcome.stats;
    stats["wall_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    let envelope = json!({
        "command": cli.command.name(),
        "config": outcome.config,
        "result": outcome.result,
        "stats": stats,
        "exit_code": outcome.code,
    });
    let payload = serde_json::to_string_pretty(&envelope).expect("json values serialize") + "\n";

    let mut out = RunOutput {
        code: outcome.code,
        stdout: String::new(),
        stderr: String::new(),
    };
    if outcome.code != EXIT_PASS {
        if let Some(err) = envelope["result"]["error"].as_str() {
            out.stderr = format!("error: {err}\n");
        }
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, &payload) {
            out.stderr += &format!("error: cannot write {}: {e}\n", path.display());
            out.code = out.code.max(EXIT_USAGE);
        }
    }
    out.stdout = match cli.format {
        Format::Json => payload,
        Format::Text => outcome.text,
    };
    out
}

/// Drops the `stats` key, leaving the part of the payload that must be
/// identical across runs with the same seed.
pub fn deterministic_payload(json_text: &str) -> serde_json::Result<serde_json::Value> {
    let mut v: serde_json::Value = serde_json::from_str(json_text)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("stats");
    }
    Ok(v)
}
