//! Verdicts, check results and their text/JSON renderings.

use std::fmt;

use serde::Serialize;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// Not run because an upstream check failed.
    Blocked,
    /// Not applicable to this input, or required data is absent.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Blocked => "BLOCKED",
            Status::Skipped => "SKIPPED",
        };
        f.pad(s)
    }
}

/// One named check with its verdict, a one-line summary and key/value witnesses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub details: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, status: Status, summary: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status, summary: summary.into(), details: Vec::new(), warnings: Vec::new() }
    }

    pub fn pass(name: impl Into<String>, summary: impl Into<String>) -> Self {
        CheckResult::new(name, Status::Pass, summary)
    }

    pub fn fail(name: impl Into<String>, summary: impl Into<String>) -> Self {
        CheckResult::new(name, Status::Fail, summary)
    }

    pub fn skipped(name: impl Into<String>, summary: impl Into<String>) -> Self {
        CheckResult::new(name, Status::Skipped, summary)
    }

    pub fn blocked(name: impl Into<String>, upstream: &str) -> Self {
        CheckResult::new(name, Status::Blocked, format!("blocked by {upstream}"))
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn with_warning(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// The full result of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub label: String,
    pub settings: Vec<(String, String)>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(label: impl Into<String>) -> Self {
        VerificationReport { label: label.into(), settings: Vec::new(), checks: Vec::new() }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.check(name).map(|c| c.status)
    }

    /// `(name, status)` pairs, the part of a report that must not depend on labeling choices.
    pub fn verdicts(&self) -> Vec<(String, Status)> {
        self.checks.iter().map(|c| (c.name.clone(), c.status)).collect()
    }

    pub fn warnings(&self) -> impl Iterator<Item = &String> {
        self.checks.iter().flat_map(|c| c.warnings.iter())
    }

    /// 0 when nothing failed or was inconclusive, 1 on any failure, 2 on inconclusive results.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| matches!(c.status, Status::Fail | Status::Blocked)) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verification report: {}\n", self.label);
        for (k, v) in &self.settings {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("[{:<12}] {}: {}\n", c.status, c.name, c.summary));
            for (k, v) in &c.details {
                out.push_str(&format!("    {k}: {v}\n"));
            }
            for w in &c.warnings {
                out.push_str(&format!("    warning: {w}\n"));
            }
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = VerificationReport::new("x");
        r.checks.push(CheckResult::pass("a", "ok"));
        r.checks.push(CheckResult::skipped("b", "no data"));
        assert_eq!(r.exit_code(), 0);
        r.checks.push(CheckResult::new("c", Status::Inconclusive, "close"));
        assert_eq!(r.exit_code(), 2);
        r.checks.push(CheckResult::fail("d", "bad"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn renderings_are_stable() {
        let mut r = VerificationReport::new("x");
        r.checks.push(CheckResult::pass("a", "ok").with_detail("k", 3).with_warning("careful"));
        assert_eq!(r.to_text(), r.clone().to_text());
        assert!(r.to_text().contains("[PASS        ] a: ok"));
        assert!(r.to_json().contains("\"status\": \"pass\""));
    }
}
