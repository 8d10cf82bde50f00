//! Structured verification reports: deterministic ordering, human text and
//! JSON output, and the exit-code policy distinguishing confirmed paper
//! discrepancies from implementation failures.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    FlaggedDiscrepancy,
}

#[derive(Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_order: Option<String>,
    /// Exact values as decimal-free strings.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            name: name.into(),
            status,
            certified_order: None,
            values: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, note: impl Into<String>) -> Self {
        let mut r = Self::new(name, Status::Fail);
        r.notes.push(note.into());
        r
    }

    pub fn with_value(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.values.insert(key.into(), value.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_order(mut self, order: impl Into<String>) -> Self {
        self.certified_order = Some(order.into());
        self
    }
}

#[derive(Clone, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub name: String,
    pub scope_notes: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            schema_version: "1".into(),
            name: name.into(),
            scope_notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn scope_note(&mut self, note: impl Into<String>) {
        self.scope_notes.push(note.into());
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }

    pub fn merge(&mut self, other: Report) {
        for n in other.scope_notes {
            self.scope_notes.push(n);
        }
        for c in other.checks {
            self.checks.push(c);
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.name);
        for note in &self.scope_notes {
            let _ = writeln!(out, "  note: {}", note);
        }
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::FlaggedDiscrepancy => "flagged-discrepancy",
            };
            let _ = writeln!(out, "[{}] {}", status, c.name);
            if let Some(o) = &c.certified_order {
                let _ = writeln!(out, "    certified to order {}", o);
            }
            for (k, v) in &c.values {
                let _ = writeln!(out, "    {} = {}", k, v);
            }
            for n in &c.notes {
                let _ = writeln!(out, "    note: {}", n);
            }
        }
        let _ = writeln!(
            out,
            "-- {}: {} checks, {} failed, {} flagged --",
            self.name,
            self.checks.len(),
            self.checks.iter().filter(|c| c.status == Status::Fail).count(),
            self.checks
                .iter()
                .filter(|c| c.status == Status::FlaggedDiscrepancy)
                .count()
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new("t");
        r.push(CheckRecord::pass("a"));
        r.push(CheckRecord::new("b", Status::FlaggedDiscrepancy));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckRecord::fail("c", "boom"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn deterministic_output() {
        let mut r = Report::new("t");
        r.push(
            CheckRecord::pass("a")
                .with_value("k1", "v1")
                .with_value("k0", "v0"),
        );
        let a = r.to_json();
        let b = r.to_json();
        assert_eq!(a, b);
        assert!(a.find("k0").unwrap() < a.find("k1").unwrap());
    }
}
