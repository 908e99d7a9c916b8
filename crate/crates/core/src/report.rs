//! Pass/fail records produced by the exhaustive checks.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// One universally quantified property checked over a finite domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Number of cases in the domain.
    pub cases: u64,
    pub passed: bool,
    /// The first failing case in enumeration order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, cases: u64, counterexample: Option<Value>) -> Self {
        Check {
            name: name.into(),
            cases,
            passed: counterexample.is_none(),
            counterexample,
        }
    }

    /// A single assertion with a description of the failure.
    pub fn single(name: impl Into<String>, ok: bool, detail: impl FnOnce() -> Value) -> Self {
        Self::new(name, 1, (!ok).then(detail))
    }
}

/// A list of checks; passes when all of them do.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub checks: Vec<Check>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: LawReport) {
        self.checks.extend(other.checks);
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Output of a named verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub params: Value,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Wall time, only recorded on request so that reports stay
    /// reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: &str, params: Value, report: LawReport) -> Self {
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            params,
            passed: report.passed(),
            checks: report.checks,
            elapsed_ms: None,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
