//! F_{q^m}-linear codes in the rank and Hamming metrics, their associated
//! (q-)matroids, weight distributions and tuple-support counts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::CharPolyMethod;
use crate::gf::{gamma_expand, Elem, ExtField, FiniteField, Matrix};
use crate::lattice::{vector_code, Ambient, LatticeError, ProjPoint, Subspace, Vector};
use crate::limits;
use crate::matroid::{bits, Mask, Matroid, MatroidError};
use crate::poly::Polynomial;
use crate::qmatroid::{QMatroid, QMatroidError};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator matrix has rank {rank} but {rows} rows")]
    NotFullRank { rank: usize, rows: usize },
    #[error("entry {0} is not an element of the field")]
    BadEntry(Elem),
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u64, limit: u64 },
    #[error("invalid projective representative matrix: {0}")]
    BadH(String),
    #[error("length {0} exceeds the 63 coordinates supported for Hamming supports")]
    TooLong(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    QMatroid(#[from] QMatroidError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

impl CodeError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            CodeError::TooLarge { .. } | CodeError::TooLong(_) => true,
            CodeError::Lattice(e) => e.is_guard(),
            CodeError::QMatroid(e) => e.is_guard(),
            CodeError::Matroid(e) => e.is_guard(),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Rank,
}

impl FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Metric, String> {
        match s {
            "hamming" | "h" => Ok(Metric::Hamming),
            "rank" | "r" => Ok(Metric::Rank),
            _ => Err(format!("unknown metric {s:?}")),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Hamming => "hamming",
            Metric::Rank => "rank",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub metric: Metric,
    /// `counts[i]` codewords have weight `i`, for `0 <= i <= n`.
    pub counts: Vec<u64>,
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Trailing zero counts are dropped; weight 0 is always shown.
        let last = self.counts.iter().rposition(|&c| c != 0).unwrap_or(0);
        let shown = self.counts.get(..=last).unwrap_or(&[]);
        let parts: Vec<String> = shown.iter().enumerate().map(|(i, c)| format!("{i}:{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn guard(what: &'static str, log2: f64, limit: u32) -> Result<(), CodeError> {
    if log2 > limit as f64 + 1e-9 {
        return Err(CodeError::TooLarge { what, size: 2f64.powf(log2).round() as u64, limit: 1u64 << limit });
    }
    Ok(())
}

#[derive(Clone)]
pub struct LinearCode {
    ext: ExtField,
    g: Matrix,
    codewords: OnceLock<Vec<Vector>>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code over GF({})", self.n(), self.k(), self.ext.order())
    }
}

impl LinearCode {
    /// The row space of a full-rank `k x n` generator matrix.
    pub fn new(ext: &ExtField, g: Matrix) -> Result<LinearCode, CodeError> {
        if let Some(&bad) = g.data().iter().find(|&&x| x >= ext.order()) {
            return Err(CodeError::BadEntry(bad));
        }
        let rank = g.rank(ext);
        if rank != g.rows() {
            return Err(CodeError::NotFullRank { rank, rows: g.rows() });
        }
        Ok(LinearCode { ext: ext.clone(), g, codewords: OnceLock::new() })
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    /// `F_q^n`, the home of rank supports.
    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.ext.base().clone(), self.n())
    }

    fn size_log2(&self, t: usize) -> f64 {
        (self.ext.order() as f64).log2() * (self.k() * t) as f64
    }

    /// Every codeword, ordered by the code of its coefficient vector.
    pub fn codewords(&self) -> Result<&[Vector], CodeError> {
        if let Some(c) = self.codewords.get() {
            return Ok(c);
        }
        guard("codeword list", self.size_log2(1), limits::get().codewords_log2)?;
        let big_q = self.ext.order() as u64;
        let total = big_q.pow(self.k() as u32);
        let list: Vec<Vector> = (0..total)
            .into_par_iter()
            .map(|mut code| {
                let mut v = vec![0; self.n()];
                for i in 0..self.k() {
                    let a = (code % big_q) as Elem;
                    code /= big_q;
                    if a != 0 {
                        for (vj, &gj) in v.iter_mut().zip(self.g.row(i)) {
                            *vj = self.ext.add(*vj, self.ext.mul(a, gj));
                        }
                    }
                }
                v
            })
            .collect();
        Ok(self.codewords.get_or_init(|| list))
    }

    /// `S_R(v)`: the column space of `Gamma(v)` in `F_q^n`.
    pub fn rank_support(&self, v: &[Elem]) -> Subspace {
        rank_support_in(&self.ext, v)
    }

    pub fn rank_weight(&self, v: &[Elem]) -> usize {
        gamma_expand(&self.ext, v).rank(self.ext.base())
    }

    /// `S_H(v)` as a bitmask of coordinates.
    pub fn hamming_support(&self, v: &[Elem]) -> Mask {
        v.iter().enumerate().filter(|(_, &x)| x != 0).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn hamming_weight(&self, v: &[Elem]) -> usize {
        v.iter().filter(|&&x| x != 0).count()
    }

    /// `S_R(V)`, the sum of the supports.
    pub fn rank_support_of_set(&self, vs: &[Vector]) -> Subspace {
        let a = self.ambient();
        vs.iter().fold(a.zero(), |acc, v| a.join(&acc, &self.rank_support(v)))
    }

    pub fn hamming_support_of_set(&self, vs: &[Vector]) -> Mask {
        vs.iter().fold(0, |acc, v| acc | self.hamming_support(v))
    }

    /// `rho(V) = rk(G Y_V)` over `F_{q^m}`.
    pub fn associated_qmatroid(&self) -> QMatroid {
        let ext = self.ext.clone();
        let g = self.g.clone();
        QMatroid::from_rank_fn(self.ext.base().clone(), self.n(), move |v| {
            if v.dim() == 0 || g.rows() == 0 {
                return 0;
            }
            g.mul(&v.basis_matrix().transpose(), &ext).rank(&ext) as u32
        })
    }

    /// `r(A)` = rank of the columns of `G` in `A`; elements are labelled
    /// `1..=n`.
    pub fn associated_matroid(&self) -> Result<Matroid, CodeError> {
        if self.n() > 63 {
            return Err(CodeError::TooLong(self.n()));
        }
        let ext = self.ext.clone();
        let g = self.g.clone();
        let labels = (1..=self.n()).map(|i| i.to_string()).collect();
        Ok(Matroid::from_rank_fn(labels, move |a| {
            if a == 0 || g.rows() == 0 {
                return 0;
            }
            g.select_columns(&bits(a).collect::<Vec<_>>()).rank(&ext) as u32
        })?)
    }

    /// `C^H`, the row space of `G H`. `h` defaults to
    /// [`projective_rep_matrix`].
    pub fn hamming_assoc_code(&self, h: Option<&Matrix>) -> Result<LinearCode, CodeError> {
        let a = self.ambient();
        let default;
        let h = match h {
            Some(h) => {
                check_rep_matrix(&a, h)?;
                h
            }
            None => {
                default = projective_rep_matrix(&a)?;
                &default
            }
        };
        let gh = if self.k() == 0 { Matrix::zeros(0, h.cols()) } else { self.g.mul(h, &self.ext) };
        LinearCode::new(&self.ext, gh)
    }

    pub fn weight_distribution(&self, metric: Metric) -> Result<WeightDistribution, CodeError> {
        let words = self.codewords()?;
        let n = self.n();
        let counts = words
            .par_iter()
            .fold(
                || vec![0u64; n + 1],
                |mut acc, v| {
                    let w = match metric {
                        Metric::Hamming => self.hamming_weight(v),
                        Metric::Rank => self.rank_weight(v),
                    };
                    acc[w] += 1;
                    acc
                },
            )
            .reduce(|| vec![0u64; n + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
        Ok(WeightDistribution { metric, counts })
    }

    /// `|C_R(V)|`, by filtering the codeword list.
    pub fn rank_support_count(&self, v: &Subspace) -> Result<u64, CodeError> {
        Ok(self.codewords()?.par_iter().filter(|w| &self.rank_support(w) == v).count() as u64)
    }

    /// `|C_H(A)|`, by filtering the codeword list.
    pub fn hamming_support_count(&self, a: Mask) -> Result<u64, CodeError> {
        Ok(self.codewords()?.par_iter().filter(|w| self.hamming_support(w) == a).count() as u64)
    }

    /// Number of ordered `t`-tuples of codewords (repetition allowed) with
    /// each rank support `S_R(v_1) + ... + S_R(v_t)`.
    pub fn critical_histogram(&self, t: usize) -> Result<HashMap<Subspace, u64>, CodeError> {
        let a = self.ambient();
        let supports: Vec<Subspace> = self.codewords()?.iter().map(|v| self.rank_support(v)).collect();
        let ids = tuple_histogram(self, t, &supports, |x, y| a.join(x, y), a.zero())?;
        Ok(ids)
    }

    pub fn critical_count(&self, w: &Subspace, t: usize) -> Result<u64, CodeError> {
        Ok(self.critical_histogram(t)?.get(w).copied().unwrap_or(0))
    }

    /// Hamming analogue: tuples grouped by the union of their supports.
    pub fn hamming_critical_histogram(&self, t: usize) -> Result<HashMap<Mask, u64>, CodeError> {
        if self.n() > 63 {
            return Err(CodeError::TooLong(self.n()));
        }
        let supports: Vec<Mask> = self.codewords()?.iter().map(|v| self.hamming_support(v)).collect();
        tuple_histogram(self, t, &supports, |x, y| x | y, 0)
    }
}

/// Enumerates every ordered `t`-tuple of codeword indices and tallies the
/// combined support. Supports are interned so each step is a table lookup.
fn tuple_histogram<S>(
    code: &LinearCode,
    t: usize,
    supports: &[S],
    join: impl Fn(&S, &S) -> S,
    zero: S,
) -> Result<HashMap<S, u64>, CodeError>
where
    S: Clone + Eq + std::hash::Hash + Send + Sync,
{
    guard("tuple search", code.size_log2(t), limits::get().tuples_log2)?;
    let mut distinct: Vec<S> = vec![zero];
    let mut id: HashMap<S, usize> = HashMap::from([(distinct[0].clone(), 0)]);
    let word_ids: Vec<usize> = supports
        .iter()
        .map(|s| {
            *id.entry(s.clone()).or_insert_with(|| {
                distinct.push(s.clone());
                distinct.len() - 1
            })
        })
        .collect();
    // Close the support set under joins, then tabulate.
    let mut i = 0;
    while i < distinct.len() {
        for j in 0..=i {
            let s = join(&distinct[i], &distinct[j]);
            if !id.contains_key(&s) {
                id.insert(s.clone(), distinct.len());
                distinct.push(s);
            }
        }
        i += 1;
    }
    let width = distinct.len();
    let table: Vec<Vec<usize>> = distinct.iter().map(|x| distinct.iter().map(|y| id[&join(x, y)]).collect()).collect();

    let words = word_ids.len() as u64;
    let total = words.pow(t as u32);
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; width],
            |mut acc, mut code| {
                let mut s = 0;
                for _ in 0..t {
                    s = table[s][word_ids[(code % words) as usize]];
                    code /= words;
                }
                acc[s] += 1;
                acc
            },
        )
        .reduce(|| vec![0u64; width], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(distinct.into_iter().zip(counts).filter(|(_, c)| *c > 0).collect())
}

/// `S_R(v)` for a vector over `ext`, computed in `ext`'s basis.
pub fn rank_support_in(ext: &ExtField, v: &[Elem]) -> Subspace {
    Ambient::new(ext.base().clone(), v.len()).column_span(&gamma_expand(ext, v))
}

/// The `n x (q^n - 1)/(q - 1)` matrix whose columns are the canonical
/// projective points in canonical order.
pub fn projective_rep_matrix(a: &Ambient) -> Result<Matrix, CodeError> {
    let points = (a.size() - 1) / (a.q() as u64 - 1);
    let limit = 1u64 << limits::get().rep_matrix_log2;
    if points > limit {
        return Err(CodeError::TooLarge { what: "projective point list", size: points, limit });
    }
    let cols: Vec<Vector> = a.points().iter().map(|p| p.vector().to_vec()).collect();
    Ok(Matrix::from_columns(&cols, a.n()))
}

fn check_rep_matrix(a: &Ambient, h: &Matrix) -> Result<(), CodeError> {
    let expected = (a.size() - 1) / (a.q() as u64 - 1);
    if h.rows() != a.n() || h.cols() as u64 != expected {
        return Err(CodeError::BadH(format!("expected {} x {expected}, got {} x {}", a.n(), h.rows(), h.cols())));
    }
    let mut seen = std::collections::HashSet::new();
    for j in 0..h.cols() {
        let col = h.column(j);
        if col.iter().any(|&x| x >= a.q()) {
            return Err(CodeError::BadH(format!("column {j} is not over GF({})", a.q())));
        }
        let p = ProjPoint::normalize(a.field(), &col).ok_or_else(|| CodeError::BadH(format!("column {j} is zero")))?;
        if !seen.insert(p) {
            return Err(CodeError::BadH(format!("column {j} repeats a projective point")));
        }
    }
    Ok(())
}

/// Points labelling the columns of `h`.
pub fn column_points(a: &Ambient, h: &Matrix) -> Vec<ProjPoint> {
    (0..h.cols()).map(|j| ProjPoint::normalize(a.field(), &h.column(j)).expect("nonzero column")).collect()
}

/// `A^{(i)}(x)` of a q-matroid. The flats form sums `chi_{M/F}` over flats
/// of dimension `n - i`; the definition form sums `chi_{M/V^perp}` over all
/// `V` of dimension `i`, using the deletion-contraction recursion.
pub fn weight_enumerator_q(qm: &QMatroid, i: usize, method: CharPolyMethod) -> Result<Polynomial, CodeError> {
    let n = qm.n();
    if i > n {
        return Ok(Polynomial::zero());
    }
    let a = qm.ambient();
    let mut total = Polynomial::zero();
    match method {
        CharPolyMethod::Flats => {
            for f in qm.flats().elements().iter().filter(|f| f.dim() == n - i) {
                total += &qm.contract(f)?.char_poly(CharPolyMethod::Flats)?;
            }
        }
        _ => {
            for v in a.enumerate_subspaces(Some(i))? {
                total += &qm.contract(&a.orthogonal(&v))?.char_poly(method)?;
            }
        }
    }
    Ok(total)
}

/// `A^{(i)}(x)` of a matroid, in the same two forms.
pub fn weight_enumerator_matroid(m: &Matroid, i: usize, method: CharPolyMethod) -> Result<Polynomial, CodeError> {
    let n = m.size();
    if i > n {
        return Ok(Polynomial::zero());
    }
    let all = m.full_mask();
    let mut total = Polynomial::zero();
    match method {
        CharPolyMethod::Flats => {
            for &f in m.flats().elements().iter().filter(|f| f.count_ones() as usize == n - i) {
                total += &m.contract(f)?.char_poly(CharPolyMethod::Flats)?;
            }
        }
        _ => {
            for a in crate::lattice::combinations(n, i) {
                let a = a.into_iter().fold(0u64, |acc, j| acc | 1 << j);
                total += &m.contract(all & !a)?.char_poly(method)?;
            }
        }
    }
    Ok(total)
}

/// `chi_{M/W^perp}(q^{mt})`.
pub fn critical_predict(qm: &QMatroid, w: &Subspace, t: usize, m: u32) -> Result<i128, CodeError> {
    let perp = qm.ambient().orthogonal(w);
    let chi = qm.contract(&perp)?.char_poly(CharPolyMethod::Flats)?;
    let x = (qm.ambient().q() as i128).pow(m * t as u32);
    Ok(chi.eval(x))
}

/// Compares tuple counts with `chi_{M/W^perp}(q^{mt})` for every `W`.
pub fn verify_critical(code: &LinearCode, t: usize, instance: &str) -> Result<Report, CodeError> {
    let mut report = Report::new(format!("rank-support tuple counts, t = {t}"), instance);
    let qm = code.associated_qmatroid();
    let hist = code.critical_histogram(t)?;
    let m = code.ext().m();
    for w in code.ambient().enumerate_subspaces(None)? {
        let count = hist.get(&w).copied().unwrap_or(0) as i128;
        let predicted = critical_predict(&qm, &w, t, m)?;
        report.check(count == predicted, || format!("W = {w:?}: {count} tuples, predicted {predicted}"));
    }
    Ok(report)
}

/// The classical statement on the Hamming side: tuples with support `A`
/// number `chi_{M/([n]-A)}(Q^t)` with `Q = q^m`.
pub fn verify_critical_hamming(code: &LinearCode, t: usize, instance: &str) -> Result<Report, CodeError> {
    let mut report = Report::new(format!("Hamming-support tuple counts, t = {t}"), instance);
    let m = code.associated_matroid()?;
    let hist = code.hamming_critical_histogram(t)?;
    let x = (code.ext().order() as i128).pow(t as u32);
    let all = m.full_mask();
    for a in 0..=all {
        let count = hist.get(&a).copied().unwrap_or(0) as i128;
        let predicted = m.contract(all & !a)?.char_poly(CharPolyMethod::Flats)?.eval(x);
        report.check(count == predicted, || format!("A = {a:#b}: {count} tuples, predicted {predicted}"));
    }
    Ok(report)
}

/// `W_R^{(i)}(C) = A^{(i)}(q^m)` for every `i`, with the enumerator in its
/// flats form, and `chi_{M/V}(q^m) = |C_R(V^perp)|` for every `V`.
pub fn verify_weight_enumerator(code: &LinearCode, instance: &str) -> Result<Report, CodeError> {
    let mut report = Report::new("rank weights from the q-matroid", instance);
    let qm = code.associated_qmatroid();
    let dist = code.weight_distribution(Metric::Rank)?;
    let x = code.ext().order() as i128;
    for (i, &c) in dist.counts.iter().enumerate() {
        let predicted = if i == 0 { 1 } else { weight_enumerator_q(&qm, i, CharPolyMethod::Flats)?.eval(x) };
        report.check(c as i128 == predicted, || format!("i = {i}: {c} codewords, predicted {predicted}"));
    }
    let a = code.ambient();
    for v in a.enumerate_subspaces(None)? {
        let chi = qm.contract(&v)?.char_poly(CharPolyMethod::Flats)?.eval(x);
        let count = code.rank_support_count(&a.orthogonal(&v))? as i128;
        report.check(chi == count, || format!("V = {v:?}: chi = {chi}, |C_R(V^perp)| = {count}"));
    }
    Ok(report)
}

/// `W_H^{(j)}(C^H) = W_R^{(i)}(C)` at `j = (q^n - q^{n-i})/(q-1)` and zero
/// elsewhere.
pub fn verify_weight_relation(code: &LinearCode, instance: &str) -> Result<Report, CodeError> {
    let mut report = Report::new("rank and Hamming weight distributions", instance);
    let ch = code.hamming_assoc_code(None)?;
    let wr = code.weight_distribution(Metric::Rank)?;
    let wh = ch.weight_distribution(Metric::Hamming)?;
    let q = code.ambient().q() as u64;
    let n = code.n() as u32;
    let mut expected = vec![0u64; wh.counts.len()];
    for (i, &c) in wr.counts.iter().enumerate() {
        let j = (q.pow(n) - q.pow(n - i as u32)) / (q - 1);
        expected[j as usize] = c;
    }
    for (j, (&got, &want)) in wh.counts.iter().zip(&expected).enumerate() {
        report.check(got == want, || format!("j = {j}: W_H = {got}, expected {want}"));
    }
    Ok(report)
}

/// The matroid of `C^H` agrees with `P(M_C)` under the column labelling.
pub fn verify_hamming_matroid(code: &LinearCode, instance: &str) -> Result<Report, CodeError> {
    let mut report = Report::new("matroid of the associated Hamming code", instance);
    let a = code.ambient();
    let h = projective_rep_matrix(&a)?;
    let ch = code.hamming_assoc_code(Some(&h))?;
    let mh = ch.associated_matroid()?;
    let qm = code.associated_qmatroid();
    let pts = column_points(&a, &h);
    let scan = limits::get().subset_scan_log2 as usize;
    let subsets: Box<dyn Iterator<Item = Mask>> = if pts.len() <= scan {
        Box::new(0..1u64 << pts.len())
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let full = mh.full_mask();
        Box::new((0..1u64 << scan).map(move |_| rng.gen::<u64>() & full))
    };
    for s in subsets {
        let span = a.span_unchecked(bits(s).map(|i| pts[i].vector()));
        let (l, r) = (mh.rank(s), qm.rank(&span));
        report.check(l == r, || format!("columns {s:#b}: r = {l}, rho(span) = {r}"));
    }
    Ok(report)
}

/// Canonical key for ordering codewords in output.
pub fn codeword_key(code: &LinearCode, v: &[Elem]) -> u64 {
    vector_code(code.ext().order(), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn gf4() -> ExtField {
        ExtField::new(&Field::new(2).unwrap(), 2, None).unwrap()
    }

    /// `<(1, gamma)>` over GF(4); `gamma` has code 2.
    fn c1() -> LinearCode {
        LinearCode::new(&gf4(), Matrix::from_rows(&[vec![1, 2]], 2)).unwrap()
    }

    #[test]
    fn weights_and_supports() {
        let c = c1();
        let a = c.ambient();
        assert_eq!(c.rank_weight(&[0, 0]), 0);
        assert_eq!(c.rank_support(&[0, 0]), a.zero());
        assert_eq!(c.rank_support(&[1, 2]), a.full());
        assert_eq!(c.rank_weight(&[2, 2]), 1);
        assert_eq!(c.hamming_weight(&[2, 2]), 2);
    }

    #[test]
    fn associated_structures() {
        let f = Field::new(2).unwrap();
        let c = c1();
        let qm = c.associated_qmatroid();
        assert!(qm.is_equivalent_under(&QMatroid::uniform(f.clone(), 1, 2), &Matrix::identity(2)).unwrap());
        let full = LinearCode::new(&gf4(), Matrix::identity(2)).unwrap();
        assert!(full
            .associated_qmatroid()
            .is_equivalent_under(&QMatroid::uniform(f, 2, 2), &Matrix::identity(2))
            .unwrap());
        let zero_col = LinearCode::new(&gf4(), Matrix::from_rows(&[vec![1, 0]], 2)).unwrap();
        assert!(zero_col.associated_matroid().unwrap().is_loop(1));
    }

    #[test]
    fn rep_matrix_and_hamming_code() {
        let a = Ambient::new(Field::new(2).unwrap(), 2);
        let h = projective_rep_matrix(&a).unwrap();
        assert_eq!(h.row_vecs(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(projective_rep_matrix(&Ambient::new(Field::new(2).unwrap(), 3)).unwrap().cols(), 7);
        let ch = c1().hamming_assoc_code(None).unwrap();
        assert_eq!(ch.generator().row_vecs(), vec![vec![1, 2, 3]]);
        let bad = Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 0]], 3);
        assert!(matches!(c1().hamming_assoc_code(Some(&bad)), Err(CodeError::BadH(_))));
    }

    #[test]
    fn distributions() {
        let c = c1();
        assert_eq!(c.weight_distribution(Metric::Rank).unwrap().counts, vec![1, 0, 3]);
        let ch = c.hamming_assoc_code(None).unwrap();
        let wh = ch.weight_distribution(Metric::Hamming).unwrap();
        assert_eq!(wh.counts, vec![1, 0, 0, 3]);
        assert_eq!(wh.to_string(), "0:1 1:0 2:0 3:3");
        let empty = LinearCode::new(&gf4(), Matrix::zeros(0, 0)).unwrap();
        assert_eq!(empty.weight_distribution(Metric::Rank).unwrap().to_string(), "0:1");
        let zero = LinearCode::new(&gf4(), Matrix::zeros(0, 2)).unwrap();
        let dist = zero.weight_distribution(Metric::Rank).unwrap();
        assert_eq!((dist.to_string(), dist.counts), ("0:1".to_string(), vec![1, 0, 0]));
    }

    #[test]
    fn enumerators() {
        let qm = QMatroid::uniform(Field::new(2).unwrap(), 1, 2);
        let a2 = weight_enumerator_q(&qm, 2, CharPolyMethod::Flats).unwrap();
        assert_eq!(a2, Polynomial::from_coeffs(vec![-1, 1]));
        assert_eq!(a2.eval(4), 3);
        assert_eq!(weight_enumerator_q(&qm, 1, CharPolyMethod::Flats).unwrap(), Polynomial::zero());
        assert_eq!(weight_enumerator_q(&qm, 1, CharPolyMethod::Recursive).unwrap(), Polynomial::zero());
    }

    #[test]
    fn critical_examples() {
        let ext = gf4();
        let c = LinearCode::new(&ext, Matrix::from_rows(&[vec![1]], 1)).unwrap();
        let a = c.ambient();
        assert_eq!(c.critical_count(&a.full(), 1).unwrap(), 3);
        assert_eq!(c.critical_count(&a.zero(), 1).unwrap(), 1);
        let qm = c.associated_qmatroid();
        assert_eq!(critical_predict(&qm, &a.full(), 1, 2).unwrap(), 3);
        assert_eq!(critical_predict(&qm, &a.zero(), 1, 2).unwrap(), 1);

        let c = c1();
        let a = c.ambient();
        let w = a.span(&[vec![1, 1]]).unwrap();
        assert_eq!(c.critical_count(&w, 1).unwrap(), 0);
        assert_eq!(critical_predict(&c.associated_qmatroid(), &w, 1, 2).unwrap(), 0);
        assert!(verify_critical(&c, 2, "c1").unwrap().passed());
        assert_eq!(c.critical_histogram(2).unwrap().values().sum::<u64>(), 16);
    }

    #[test]
    fn verification_reports() {
        let c = c1();
        assert!(verify_weight_enumerator(&c, "c1").unwrap().passed());
        assert!(verify_weight_relation(&c, "c1").unwrap().passed());
        assert!(verify_hamming_matroid(&c, "c1").unwrap().passed());
        assert!(verify_critical_hamming(&c, 2, "c1").unwrap().passed());
    }

    #[test]
    fn rejects_rank_deficient_generators() {
        let g = Matrix::from_rows(&[vec![1, 2], vec![2, 3]], 2);
        // (2,3) = gamma * (1,gamma) since gamma^2 = gamma + 1 = 3.
        assert_eq!(LinearCode::new(&gf4(), g).unwrap_err(), CodeError::NotFullRank { rank: 1, rows: 2 });
    }
}
