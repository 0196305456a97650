//! Seeded test corpora of q-matroids and codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::LinearCode;
use crate::gf::{ExtField, Field, FiniteField, Matrix};
use crate::qmatroid::QMatroid;

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub qmatroid: QMatroid,
    pub code: Option<LinearCode>,
}

/// Every `U_{k,n}(q)` for the given fields and `1 <= n <= max_n`.
pub fn uniforms(qs: &[u32], max_n: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for &q in qs {
        let field = Field::new(q).expect("prime power");
        for n in 1..=max_n {
            for k in 0..=n {
                out.push(Instance {
                    name: format!("U({k},{n};{q})"),
                    qmatroid: QMatroid::uniform(field.clone(), k, n),
                    code: None,
                });
            }
        }
    }
    out
}

/// A uniformly random full-rank `k x n` generator over `ext`.
pub fn random_code(ext: &ExtField, k: usize, n: usize, rng: &mut impl Rng) -> LinearCode {
    assert!(k <= n);
    loop {
        let data = (0..k * n).map(|_| rng.gen_range(0..ext.order())).collect();
        if let Ok(c) = LinearCode::new(ext, Matrix::new(k, n, data)) {
            return c;
        }
    }
}

/// `count` random codes over `GF(q^m)` with `m` drawn from `ms`, length in
/// `1..=max_n` and dimension in `1..=n`.
pub fn random_codes(seed: u64, count: usize, q: u32, ms: &[u32], max_n: usize) -> Vec<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Field::new(q).expect("prime power");
    let exts: Vec<ExtField> = ms.iter().map(|&m| ExtField::new(&base, m, None).expect("default modulus")).collect();
    (0..count)
        .map(|_| {
            let ext = &exts[rng.gen_range(0..exts.len())];
            let n = rng.gen_range(1..=max_n);
            let k = rng.gen_range(1..=n);
            random_code(ext, k, n, &mut rng)
        })
        .collect()
}

pub fn code_instances(codes: Vec<LinearCode>) -> Vec<Instance> {
    codes
        .into_iter()
        .enumerate()
        .map(|(i, c)| Instance { name: format!("code#{i} {c:?}"), qmatroid: c.associated_qmatroid(), code: Some(c) })
        .collect()
}

/// The standard corpus: all uniforms over GF(2) and GF(3) with `n <= 4`
/// and 30 random codes with `q = 2`, `m` in `{2, 3}`, `n <= 4`.
pub fn standard(seed: u64) -> Vec<Instance> {
    let mut out = uniforms(&[2, 3], 4);
    out.extend(code_instances(random_codes(seed, 30, 2, &[2, 3], 4)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let a = random_codes(5, 6, 2, &[2, 3], 4);
        let b = random_codes(5, 6, 2, &[2, 3], 4);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.generator(), y.generator());
        }
        assert_eq!(standard(1).len(), 28 + 30);
    }
}
