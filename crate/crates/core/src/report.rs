//! Structured results for identity suites: one record per checked identity,
//! grouped into per-algebra reports with a stable, timing-free shape so that
//! serialized output is reproducible byte for byte.

use serde::{Deserialize, Serialize};

/// Outcome of one checked identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Stable kebab-case name of the identity.
    pub id: String,
    /// The identity itself, in operator notation.
    pub statement: String,
    /// Number of randomized instances exercised (0 when the check is a
    /// single structural computation).
    pub instances: usize,
    pub pass: bool,
    /// Populated on failure with the first offending instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// All checks of one suite run against one algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, algebra: &str, seed: u64, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.into(), algebra: algebra.into(), seed, checks, passed }
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_reflects_checks() {
        let good = CheckRecord {
            id: "x".into(),
            statement: "x = x".into(),
            instances: 1,
            pass: true,
            detail: None,
        };
        let bad = CheckRecord { pass: false, ..good.clone() };
        assert!(SuiteReport::new("s", "a", 0, vec![good.clone()]).passed);
        let rep = SuiteReport::new("s", "a", 0, vec![good, bad]);
        assert!(!rep.passed);
        assert_eq!(rep.failures().len(), 1);
    }

    #[test]
    fn serialization_omits_empty_detail() {
        let rec = CheckRecord {
            id: "x".into(),
            statement: "x = x".into(),
            instances: 2,
            pass: true,
            detail: None,
        };
        let s = serde_json::to_string(&rec).unwrap();
        assert!(!s.contains("detail"));
    }
}
