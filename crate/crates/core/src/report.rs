//! Structured verification reports.  Every suite produces one of these;
//! serialization is JSON and iteration order is deterministic, so the same
//! parameters and seed always give byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub case: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub cases: Vec<CaseRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            seed: 0,
            cases: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn record(&mut self, case: impl Into<String>, pass: bool, witness: Option<String>) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.cases.push(CaseRecord {
            case: case.into(),
            pass,
            witness,
        });
    }

    /// Record a passing aggregate case covering `count` checked instances.
    pub fn record_bulk(&mut self, case: impl Into<String>, count: usize) {
        self.record(format!("{} [{count} instances]", case.into()), true, None);
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// Merge another report's cases into this one, prefixing the case ids.
    pub fn absorb(&mut self, other: Report) {
        for c in other.cases {
            self.record(format!("{}/{}", other.suite, c.case), c.pass, c.witness);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
