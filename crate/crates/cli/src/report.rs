//! Report structure shared by every subcommand, and its text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Bumped whenever the JSON layout changes; mirrored in `schema/report.schema.json`.
pub const SCHEMA_VERSION: &str = "pvi-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Match,
    Corrected,
    Info,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Match => "MATCH",
            Status::Corrected => "CORRECTED",
            Status::Info => "INFO",
            Status::Fail => "FAIL",
        }
    }

    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub kind: String,
    pub key: String,
    pub status: Status,
    pub summary: String,
    pub detail: serde_json::Value,
}

impl Item {
    pub fn new(kind: &str, key: impl Into<String>, status: Status, summary: impl Into<String>, detail: impl Serialize) -> Self {
        Item {
            kind: kind.to_string(),
            key: key.into(),
            status,
            summary: summary.into(),
            detail: serde_json::to_value(detail).expect("report detail serializes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub kind: String,
    pub key: String,
    pub millis: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub items: usize,
    pub pass: usize,
    #[serde(rename = "match")]
    pub matched: usize,
    pub corrected: usize,
    pub info: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub toolchain: String,
    pub summary: Summary,
    pub verdicts: Vec<Item>,
    /// Present only with `--timing`; wall time breaks bit-identical output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<Timing>>,
}

impl Report {
    pub fn new(command: &str, verdicts: Vec<Item>, timing: Option<Vec<Timing>>) -> Self {
        let mut summary = Summary { items: verdicts.len(), ..Summary::default() };
        for v in &verdicts {
            match v.status {
                Status::Pass => summary.pass += 1,
                Status::Match => summary.matched += 1,
                Status::Corrected => summary.corrected += 1,
                Status::Info => summary.info += 1,
                Status::Fail => summary.fail += 1,
            }
        }
        Report {
            schema: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            toolchain: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            summary,
            verdicts,
            timing,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind_w = self.verdicts.iter().map(|v| v.kind.len()).max().unwrap_or(0);
        let key_w = self.verdicts.iter().map(|v| v.key.len()).max().unwrap_or(0);
        for v in &self.verdicts {
            let _ = writeln!(out, "{:kind_w$}  {:key_w$}  {:9}  {}", v.kind, v.key, v.status.name(), v.summary);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} items, {} PASS, {} MATCH, {} CORRECTED, {} INFO, {} FAIL",
            self.command, s.items, s.pass, s.matched, s.corrected, s.info, s.fail
        );
        if let Some(timing) = &self.timing {
            let total: u64 = timing.iter().map(|t| t.millis).sum();
            let _ = writeln!(out, "timing: {} items, {total} ms summed", timing.len());
            for t in timing {
                let _ = writeln!(out, "  {:kind_w$}  {:key_w$}  {} ms", t.kind, t.key, t.millis);
            }
        }
        out
    }
}
