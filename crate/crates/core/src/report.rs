//! Pass/fail records produced by the verification routines.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: String,
    pub instance: String,
    pub status: Status,
    /// First counterexample found, if any.
    pub witness: Option<String>,
    /// Number of individual comparisons made.
    pub checked: u64,
}

impl Report {
    pub fn new(theorem: impl Into<String>, instance: impl Into<String>) -> Report {
        Report { theorem: theorem.into(), instance: instance.into(), status: Status::Pass, witness: None, checked: 0 }
    }

    /// Records one comparison; the first failure's witness is kept.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness());
        }
        ok
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Folds another report's comparisons into this one.
    pub fn absorb(&mut self, other: &Report) {
        self.checked += other.checked;
        if !other.passed() && self.passed() {
            self.status = Status::Fail;
            self.witness = other.witness.clone();
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{status} {} [{}] ({} checks)", self.theorem, self.instance, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}
