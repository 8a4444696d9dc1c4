//! Structured law-check reports: one record per verified law, with an
//! optional counterexample string, serializable as JSON and renderable
//! as text. Seeds are carried so that randomized suites reproduce.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub fixture: String,
    pub status: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn named(law: &str, fixture: &str, status: bool) -> Self {
        LawReport {
            law: law.to_string(),
            fixture: fixture.to_string(),
            status,
            counterexample: None,
        }
    }

    pub fn with_counterexample(law: &str, fixture: &str, detail: String) -> Self {
        LawReport {
            law: law.to_string(),
            fixture: fixture.to_string(),
            status: false,
            counterexample: Some(detail),
        }
    }
}

/// A bundle of law checks produced by one verification run.
#[derive(Clone, Serialize)]
pub struct Report {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<LawReport>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            seed: None,
            checks: Vec::new(),
        }
    }

    pub fn with_seed(suite: &str, seed: u64) -> Self {
        Report {
            suite: suite.to_string(),
            seed: Some(seed),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: LawReport) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status)
    }

    /// Status of the first check with the given law name; false when
    /// the law was never recorded.
    pub fn status(&self, law: &str) -> bool {
        self.checks
            .iter()
            .find(|c| c.law == law)
            .map(|c| c.status)
            .unwrap_or(false)
    }

    pub fn failures(&self) -> Vec<&LawReport> {
        self.checks.iter().filter(|c| !c.status).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for c in &self.checks {
            let mark = if c.status { "ok  " } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {} ({})\n", c.law, c.fixture));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("         counterexample: {ce}\n"));
            }
        }
        out
    }
}

impl fmt::Debug for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}
