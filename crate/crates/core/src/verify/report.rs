use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The smallest witness of a failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub roots: Vec<String>,
    pub observed: String,
    pub expected: String,
}

impl Counterexample {
    pub fn new(roots: impl IntoIterator<Item = String>, observed: impl fmt::Display, expected: impl fmt::Display) -> Self {
        Counterexample { roots: roots.into_iter().collect(), observed: observed.to_string(), expected: expected.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub status: Status,
    /// `None` for exact checks.
    pub tolerance: Option<f64>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn pass(name: &str, claim: &str, tolerance: Option<f64>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            claim: claim.into(),
            status: Status::Pass,
            tolerance,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn fail(name: &str, claim: &str, tolerance: Option<f64>, detail: impl Into<String>, counterexample: Counterexample) -> Self {
        Check {
            name: name.into(),
            claim: claim.into(),
            status: Status::Fail,
            tolerance,
            detail: detail.into(),
            counterexample: Some(counterexample),
        }
    }

    pub fn from_result(
        name: &str,
        claim: &str,
        tolerance: Option<f64>,
        result: Result<String, (String, Counterexample)>,
    ) -> Self {
        match result {
            Ok(detail) => Self::pass(name, claim, tolerance, detail),
            Err((detail, cx)) => Self::fail(name, claim, tolerance, detail, cx),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            write!(f, "[{status}] {}", c.name)?;
            match c.tolerance {
                Some(t) => write!(f, " (tol {t:e})")?,
                None => write!(f, " (exact)")?,
            }
            writeln!(f)?;
            writeln!(f, "       {}", c.claim)?;
            if !c.detail.is_empty() {
                writeln!(f, "       {}", c.detail)?;
            }
            if let Some(cx) = &c.counterexample {
                writeln!(f, "       counterexample {:?}: observed {}, expected {}", cx.roots, cx.observed, cx.expected)?;
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        writeln!(f, "{passed}/{} checks passed", self.checks.len())
    }
}
