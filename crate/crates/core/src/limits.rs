//! Size guards for exhaustive enumerations.
//!
//! Every guard is a base-2 logarithm of the largest permitted search space.
//! The values are process-wide; [`raise`] exists for front ends that let a
//! user explicitly opt into larger searches.

use std::sync::RwLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// `q^n` for listing subspaces.
    pub enumerate_log2: u32,
    /// `q^{mk}` for listing codewords.
    pub codewords_log2: u32,
    /// `q^{mkt}` for listing t-tuples of codewords.
    pub tuples_log2: u32,
    /// `q^n` for the subset-sum characteristic polynomial of a q-matroid.
    pub qchar_definition_log2: u32,
    /// `q^n` for exhaustive q-matroid axiom checks.
    pub axioms_log2: u32,
    /// `q^n` for isomorphism search.
    pub equivalence_log2: u32,
    /// `q^n` for the projective representative matrix.
    pub rep_matrix_log2: u32,
    /// Groundset size for the subset-sum characteristic polynomial of a matroid.
    pub matroid_definition_elems: u32,
    /// Groundset size for exhaustive matroid axiom checks.
    pub matroid_axiom_elems: u32,
    /// Number of subsets checked exhaustively by map predicates.
    pub subset_scan_log2: u32,
}

pub const DEFAULT: Limits = Limits {
    enumerate_log2: 20,
    codewords_log2: 20,
    tuples_log2: 22,
    qchar_definition_log2: 16,
    axioms_log2: 10,
    equivalence_log2: 6,
    rep_matrix_log2: 12,
    matroid_definition_elems: 20,
    matroid_axiom_elems: 12,
    subset_scan_log2: 16,
};

static LIMITS: RwLock<Limits> = RwLock::new(DEFAULT);

pub fn get() -> Limits {
    *LIMITS.read().unwrap()
}

/// Adds `extra` to every guard.
pub fn raise(extra: u32) {
    let mut guard = LIMITS.write().unwrap();
    let l = &mut *guard;
    for g in [
        &mut l.enumerate_log2,
        &mut l.codewords_log2,
        &mut l.tuples_log2,
        &mut l.qchar_definition_log2,
        &mut l.axioms_log2,
        &mut l.equivalence_log2,
        &mut l.rep_matrix_log2,
        &mut l.matroid_definition_elems,
        &mut l.matroid_axiom_elems,
        &mut l.subset_scan_log2,
    ] {
        *g = g.saturating_add(extra);
    }
}
