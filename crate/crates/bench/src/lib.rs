//! Fixed inputs for the benchmarks in `benches/`.

use qproj_core::corpus::random_codes;
use qproj_core::{Field, LinearCode, QMatroid};

pub const SEED: u64 = 7;

/// `U_{k,n}(q)`.
pub fn uniform(q: u32, k: usize, n: usize) -> QMatroid {
    QMatroid::uniform(Field::new(q).expect("prime power"), k, n)
}

/// A seeded random code over `GF(2^m)` of length `n` (dimension drawn at
/// random).
pub fn code(m: u32, n: usize) -> LinearCode {
    random_codes(SEED, 16, 2, &[m], n).into_iter().find(|c| c.n() == n).expect("some code of full length")
}
