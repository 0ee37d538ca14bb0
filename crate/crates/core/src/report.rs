//! Named pass/fail checks shared by the command line and the test suites.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Description of the first failure, if any.
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), passed: false, witness: Some(witness.into()) }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, witness())
        }
    }

    /// Passes when `err` is None.
    pub fn from_witness(name: impl Into<String>, err: Option<String>) -> Self {
        match err {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
