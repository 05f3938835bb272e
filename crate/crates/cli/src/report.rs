//! Machine-readable verification reports: one stable JSON-compatible schema,
//! deterministic byte-for-byte for a fixed scenario and toolkit version.
//! Timings are opt-in (they would break determinism) and are integer
//! milliseconds; no floating-point value appears anywhere.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNVERIFIED")]
    Unverified,
    /// Informational: recorded observations that are not pass/fail checks
    /// (for example the flagged listed-value discrepancy).
    #[serde(rename = "NOTE")]
    Note,
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub toolkit: &'static str,
    pub version: &'static str,
    pub scenario: serde_json::Value,
    pub entries: Vec<Entry>,
    pub status: Status,
}

pub struct ReportBuilder {
    scenario: serde_json::Value,
    entries: Vec<Entry>,
    with_timings: bool,
}

impl ReportBuilder {
    pub fn new(scenario: serde_json::Value, with_timings: bool) -> Self {
        ReportBuilder { scenario, entries: vec![], with_timings }
    }

    pub fn push(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.entries.push(Entry {
            name: name.to_string(),
            status,
            detail: detail.into(),
            certificate: None,
            timing_ms: None,
        });
    }

    pub fn push_cert(
        &mut self,
        name: &str,
        status: Status,
        detail: impl Into<String>,
        cert: impl Serialize,
    ) {
        self.entries.push(Entry {
            name: name.to_string(),
            status,
            detail: detail.into(),
            certificate: serde_json::to_value(cert).ok(),
            timing_ms: None,
        });
    }

    /// Run a named check, recording its wall time when timings are enabled.
    pub fn timed<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        let before = self.entries.len();
        let start = Instant::now();
        let out = f(self);
        if self.with_timings {
            let ms = start.elapsed().as_millis() as u64;
            for e in &mut self.entries[before..] {
                if e.timing_ms.is_none() {
                    e.timing_ms = Some(ms);
                }
            }
        }
        out
    }

    pub fn pass_check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn finish(self) -> Report {
        let status = aggregate(&self.entries);
        Report {
            toolkit: "shadowcert",
            version: env!("CARGO_PKG_VERSION"),
            scenario: self.scenario,
            entries: self.entries,
            status,
        }
    }
}

fn aggregate(entries: &[Entry]) -> Status {
    if entries.iter().any(|e| e.status == Status::Fail) {
        Status::Fail
    } else if entries.iter().any(|e| e.status == Status::Unverified) {
        Status::Unverified
    } else {
        Status::Pass
    }
}

impl Report {
    /// Exit code contract: 0 when everything passed, 2 when something is
    /// unverified, 1 on failure.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Note => 0,
            Status::Unverified => 2,
            Status::Fail => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per entry, for humans.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let s = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Unverified => "UNVERIFIED",
                Status::Note => "NOTE",
            };
            out.push_str(&format!("{:<11} {}  {}\n", s, e.name, e.detail));
        }
        out.push_str(&format!(
            "overall: {}\n",
            match self.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Unverified => "UNVERIFIED",
                Status::Note => "NOTE",
            }
        ));
        out
    }

    pub fn merged(scenario: serde_json::Value, parts: Vec<(String, Report)>) -> Report {
        let mut entries = vec![];
        for (prefix, rep) in parts {
            for mut e in rep.entries {
                e.name = format!("{prefix}.{}", e.name);
                entries.push(e);
            }
        }
        let status = aggregate(&entries);
        Report {
            toolkit: "shadowcert",
            version: env!("CARGO_PKG_VERSION"),
            scenario,
            entries,
            status,
        }
    }
}
