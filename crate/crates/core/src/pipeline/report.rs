//! Verification reports: one record per identity, stable JSON and text renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub kind: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    /// Summary on success, located differences on failure.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// Free-text note carried over from the fixture.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub bundle: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(bundle: &str, checks: Vec<CheckRecord>, notes: Vec<String>) -> Self {
        let passed = checks.iter().all(CheckRecord::passed);
        VerificationReport { schema: super::SCHEMA_VERSION, bundle: bundle.to_string(), passed, checks, notes }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        let mut out = format!("{}: {}/{} checks passed\n", self.bundle, ok, self.checks.len());
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {} ({})", c.name, c.kind));
            if !c.detail.is_empty() {
                out.push_str(": ");
                out.push_str(&c.detail);
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}
