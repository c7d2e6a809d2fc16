//! Verification records shared by the decomposer, the idempotent lab and the
//! skew-series suite.

use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    /// Passes iff the two sides render identically.
    pub fn compare(suite: &str, name: impl Into<String>, expected: impl Display, actual: impl Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            suite: suite.into(),
            name: name.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }

    pub fn holds(suite: &str, name: impl Into<String>, passed: bool, detail: impl Display) -> Self {
        Self {
            suite: suite.into(),
            name: name.into(),
            passed,
            expected: "holds".into(),
            actual: if passed { "holds".into() } else { detail.to_string() },
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| !c.passed).collect()
}
