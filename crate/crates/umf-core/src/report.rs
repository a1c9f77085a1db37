//! Structured pass/fail records for theorem verification.
//!
//! Every law a pipeline checks becomes one [`Check`]: a name, a verdict, the
//! number of cases swept, and a counterexample witness when the verdict is
//! negative. Failures are data, not panics — a red check in a report is the
//! signal that an implementation bug (never the mathematics) needs attention.

use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of one exhaustively checked law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    /// Stable, report-friendly name of the law, e.g. `"cocycle_identity"`.
    pub name: String,
    pub pass: bool,
    /// Number of cases the sweep covered.
    pub cases: u64,
    /// First counterexample, rendered as text, when `pass` is false;
    /// optionally a short note when it is true.
    pub witness: Option<String>,
}

/// An ordered collection of checks; order is deterministic and part of the
/// report format.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&mut self, name: &str, cases: u64) {
        self.checks.push(Check {
            name: String::from(name),
            pass: true,
            cases,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, cases: u64, witness: String) {
        self.checks.push(Check {
            name: String::from(name),
            pass: false,
            cases,
            witness: Some(witness),
        });
    }

    /// Record a boolean outcome with an optional failure witness.
    pub fn record(&mut self, name: &str, pass: bool, cases: u64, witness: Option<String>) {
        self.checks.push(Check {
            name: String::from(name),
            pass,
            cases,
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Prefix every check name, used when embedding one report in another.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            let mut name = String::from(prefix);
            name.push('.');
            name.push_str(&c.name);
            c.name = name;
        }
        self
    }
}
