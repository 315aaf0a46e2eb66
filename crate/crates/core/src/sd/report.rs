use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One failed check. Elements are rendered in their literal grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub x: String,
    pub y: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Verdict of a verification run.
///
/// `status` is `fail` iff `violations` is nonempty, unless the run itself
/// could not complete, in which case it is `error`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdReport {
    pub status: Status,
    pub checked_pairs: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Default for SdReport {
    fn default() -> Self {
        SdReport::new()
    }
}

impl SdReport {
    pub fn new() -> Self {
        SdReport {
            status: Status::Pass,
            checked_pairs: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn error(note: impl Into<String>) -> Self {
        let mut r = SdReport::new();
        r.status = Status::Error;
        r.notes.push(note.into());
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn violate(&mut self, v: Violation) {
        self.violations.push(v);
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds `other` into `self`; the worse status wins.
    pub fn merge(&mut self, other: SdReport) {
        self.checked_pairs += other.checked_pairs;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
        self.status = match (self.status, other.status) {
            (Status::Error, _) | (_, Status::Error) => Status::Error,
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            _ => Status::Pass,
        };
    }

    pub fn render_text(&self, title: &str) -> String {
        let mut out = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(out, "[{status}] {title} ({} checks)", self.checked_pairs);
        for v in &self.violations {
            match &v.y {
                Some(y) => {
                    let _ = writeln!(out, "  violation {}: x = {}, y = {}: {} != {}", v.check, v.x, y, v.lhs, v.rhs);
                }
                None => {
                    let _ = writeln!(out, "  violation {}: x = {}: {} != {}", v.check, v.x, v.lhs, v.rhs);
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Violation {
        Violation {
            check: "sd_equation".into(),
            x: "2".into(),
            y: Some("1".into()),
            lhs: "9".into(),
            rhs: "5/3".into(),
        }
    }

    #[test]
    fn status_tracks_violations() {
        let mut r = SdReport::new();
        assert!(r.passed());
        r.violate(v());
        assert_eq!(r.status, Status::Fail);
        let mut e = SdReport::error("boom");
        e.merge(r);
        assert_eq!(e.status, Status::Error);
        assert_eq!(e.violations.len(), 1);
    }

    #[test]
    fn json_schema() {
        let mut r = SdReport::new();
        r.checked_pairs = 3;
        r.violate(v());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["checked_pairs"], 3);
        assert_eq!(json["violations"][0]["rhs"], "5/3");
        assert!(json["notes"].is_array());
        let back: SdReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn text_rendering() {
        let mut r = SdReport::new();
        r.violate(v());
        r.note("exact");
        let t = r.render_text("squares");
        assert!(t.starts_with("[FAIL] squares"));
        assert!(t.contains("x = 2, y = 1: 9 != 5/3"));
    }
}
