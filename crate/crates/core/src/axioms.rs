//! Axiom identifiers and violation reports shared by matroids and q-matroids.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    R1,
    R2,
    R3,
    F1,
    F2,
    F3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::R1 => "R1 (boundedness)",
            Axiom::R2 => "R2 (monotonicity)",
            Axiom::R3 => "R3 (submodularity)",
            Axiom::F1 => "F1 (top is a flat)",
            Axiom::F2 => "F2 (closed under intersection)",
            Axiom::F3 => "F3 (unique covering flat)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<W> {
    pub axiom: Axiom,
    pub witness: (W, W),
}

/// Result of an axiom check. Only the first few violations per axiom are kept.
#[derive(Clone, Debug)]
pub struct AxiomReport<W> {
    pub violations: Vec<Violation<W>>,
    pub checks: u64,
    pub exhaustive: bool,
}

const KEEP_PER_AXIOM: usize = 4;

impl<W> AxiomReport<W> {
    pub(crate) fn new(exhaustive: bool) -> Self {
        AxiomReport { violations: Vec::new(), checks: 0, exhaustive }
    }

    pub(crate) fn check(&mut self, ok: bool, axiom: Axiom, witness: impl FnOnce() -> (W, W)) {
        self.checks += 1;
        if !ok && self.violations.iter().filter(|v| v.axiom == axiom).count() < KEEP_PER_AXIOM {
            self.violations.push(Violation { axiom, witness: witness() });
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn first(&self) -> Option<&Violation<W>> {
        self.violations.first()
    }
}

/// How thoroughly to check axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// Which algorithm computes a characteristic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharPolyMethod {
    /// Sum over all subsets or subspaces.
    Definition,
    /// Möbius sum over the lattice of flats.
    Flats,
    /// Deletion-contraction style recursion.
    Recursive,
}

impl CharPolyMethod {
    pub const ALL: [CharPolyMethod; 3] = [CharPolyMethod::Definition, CharPolyMethod::Flats, CharPolyMethod::Recursive];
}

impl std::str::FromStr for CharPolyMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "definition" => Ok(CharPolyMethod::Definition),
            "flats" => Ok(CharPolyMethod::Flats),
            "recursive" => Ok(CharPolyMethod::Recursive),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

impl fmt::Display for CharPolyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharPolyMethod::Definition => "definition",
            CharPolyMethod::Flats => "flats",
            CharPolyMethod::Recursive => "recursive",
        })
    }
}
