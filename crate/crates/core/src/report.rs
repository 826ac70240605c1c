//! Pass/fail records produced by every checker.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of checking one axiom family on one structure.
///
/// A failing report names the violated axiom with a dotted identifier
/// (`nagata.posemigroup.sigma-mul`) and carries the witness tuple that breaks
/// it. A passing report carries no witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub axiom: String,
    pub witness: Vec<(String, usize)>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(axiom: &str, detail: impl Into<String>) -> Self {
        CheckReport {
            passed: true,
            axiom: axiom.to_owned(),
            witness: Vec::new(),
            detail: detail.into(),
        }
    }

    pub fn fail(axiom: &str, witness: &[(&str, usize)], detail: impl Into<String>) -> Self {
        CheckReport {
            passed: false,
            axiom: axiom.to_owned(),
            witness: witness.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            detail: detail.into(),
        }
    }

    /// Prefixes the axiom identifier, e.g. to say which sort of a two-sorted
    /// structure a sub-check ran on.
    pub fn scoped(mut self, scope: &str) -> Self {
        let mut axiom = String::with_capacity(scope.len() + 1 + self.axiom.len());
        axiom.push_str(scope);
        axiom.push('.');
        axiom.push_str(&self.axiom);
        self.axiom = axiom;
        self
    }

    pub fn into_verdict(self) -> Verdict {
        if self.passed {
            Ok(())
        } else {
            Err(self)
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.axiom)?;
        if !self.witness.is_empty() {
            f.write_str(" [")?;
            for (i, (k, v)) in self.witness.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{k}={v}")?;
            }
            f.write_str("]")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Intermediate result of a scan: `Err` carries the first failing report.
pub type Verdict = Result<(), CheckReport>;

/// Fails with `axiom` and `witness` unless `cond` holds.
#[inline]
pub fn ensure(cond: bool, axiom: &str, witness: &[(&str, usize)], law: &str) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(CheckReport::fail(axiom, witness, law))
    }
}

/// Runs a scan and turns its verdict into a report for `family`.
pub fn conclude(family: &str, scan: impl FnOnce() -> Verdict) -> CheckReport {
    match scan() {
        Ok(()) => CheckReport::pass(family, "all axioms hold"),
        Err(report) => report,
    }
}
