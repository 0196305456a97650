//! The projectivization matroid `P(M)` of a q-matroid: the matroid on the
//! projective points of the groundspace with `r(S) = rho(span S)`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::axioms::CharPolyMethod;
use crate::flats::{check_isomorphism, FlatLattice};
use crate::gf::{Elem, FiniteField, Matrix};
use crate::lattice::{ProjPoint, Subspace, Vector};
use crate::limits;
use crate::matroid::{bits, Mask, Matroid, MatroidError, MAX_ELEMENTS};
use crate::poly::Polynomial;
use crate::qmatroid::{QMatroid, QMatroidError};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectivizeError {
    #[error("{0} projective points exceed the groundset limit of 63")]
    TooLarge(u64),
    #[error("set is not contained in Q_V")]
    NotContained,
    #[error("subspaces are not complementary")]
    NotComplementary,
    #[error(transparent)]
    QMatroid(#[from] QMatroidError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

impl ProjectivizeError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            ProjectivizeError::TooLarge(_) => true,
            ProjectivizeError::QMatroid(e) => e.is_guard(),
            ProjectivizeError::Matroid(e) => e.is_guard(),
            _ => false,
        }
    }
}

#[derive(Clone)]
pub struct Projectivization {
    source: QMatroid,
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
    matroid: Matroid,
}

impl std::fmt::Debug for Projectivization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P({:?})", self.source)
    }
}

pub fn projectivize(qm: &QMatroid) -> Result<Projectivization, ProjectivizeError> {
    let a = qm.ambient();
    let count = (a.size().saturating_sub(1)) / (a.q() as u64 - 1);
    if count > MAX_ELEMENTS as u64 {
        return Err(ProjectivizeError::TooLarge(count));
    }
    let points = qm.points().to_vec();
    let labels = points.iter().map(|p| p.to_string()).collect();
    let source = qm.clone();
    let pts = points.clone();
    let matroid = Matroid::from_rank_fn(labels, move |s| {
        let span = source.ambient().span_unchecked(bits(s).map(|i| pts[i].vector()));
        source.rank(&span)
    })?;
    let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(Projectivization { source: qm.clone(), points, index, matroid })
}

/// Translates a set of labels of `from` into a mask of `to`.
fn relabel(from: &Matroid, mask: Mask, to: &Matroid) -> Result<Mask, MatroidError> {
    let lookup: HashMap<&str, usize> = to.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    bits(mask).try_fold(0, |m, i| {
        let l = from.label(i);
        lookup.get(l).map(|&j| m | 1 << j).ok_or_else(|| MatroidError::UnknownElement(l.to_string()))
    })
}

fn subsets_to_check(n: usize, seed: u64) -> Vec<Mask> {
    let limit = limits::get().subset_scan_log2 as usize;
    if n <= limit {
        return (0..1u64 << n).collect();
    }
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..1usize << limit).map(|_| rng.gen::<u64>() & all).collect()
}

impl Projectivization {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn source(&self) -> &QMatroid {
        &self.source
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn point_of(&self, v: &[Elem]) -> Option<usize> {
        self.index_of(&ProjPoint::normalize(self.source.field(), v)?)
    }

    /// `P(V)`: the points lying in `V`.
    pub fn points_of(&self, v: &Subspace) -> Mask {
        let a = self.source.ambient();
        self.points.iter().enumerate().filter(|(_, p)| a.contains_vector(v, p.vector())).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn flat_image(&self, f: &Subspace) -> Mask {
        self.points_of(f)
    }

    /// `P^{-1}(S) + {0}` when that set is a subspace.
    pub fn flat_preimage(&self, s: Mask) -> Option<Subspace> {
        let span = self.source.ambient().span_unchecked(bits(s).map(|i| self.points[i].vector()));
        (self.points_of(&span) == s).then_some(span)
    }

    /// `Q_V = PE - P(V)`.
    pub fn q_set(&self, v: &Subspace) -> Mask {
        self.matroid.full_mask() & !self.points_of(v)
    }

    /// `Q_V - A` for `A` inside `Q_V`.
    pub fn q_set_star(&self, v: &Subspace, a: Mask) -> Result<Mask, ProjectivizeError> {
        let q = self.q_set(v);
        if a & !q != 0 {
            return Err(ProjectivizeError::NotContained);
        }
        Ok(q & !a)
    }

    /// Index map from the flats of the q-matroid into the flats of `P(M)`.
    fn lattice_map(
        &self,
        qflats: &FlatLattice<Subspace>,
        mflats: &FlatLattice<Mask>,
        to_mask: impl Fn(&Subspace) -> Result<Mask, MatroidError>,
    ) -> Result<Vec<usize>, String> {
        qflats
            .elements()
            .iter()
            .map(|f| {
                let m = to_mask(f).map_err(|e| e.to_string())?;
                mflats.index_of(&m).ok_or_else(|| format!("P({f:?}) is not a flat"))
            })
            .collect()
    }

    /// `chi_M = chi_{P(M)}`, and `chi_{M/V} = chi_{P(M)/P(V)}` for every
    /// subspace `V` when `contractions` is set. The q-side uses the flats
    /// formula, the matroid side the deletion-contraction recursion.
    pub fn verify_char_poly(&self, instance: &str, contractions: bool) -> Result<Report, ProjectivizeError> {
        let mut report = Report::new("characteristic polynomial of P(M)", instance);
        let q = self.source.char_poly(CharPolyMethod::Flats)?;
        let m = self.matroid.char_poly(CharPolyMethod::Recursive)?;
        report.check(q == m, || format!("chi_M = {q}, chi_P(M) = {m}"));
        if contractions {
            for v in self.source.ambient().enumerate_subspaces(None).map_err(QMatroidError::from)? {
                let q = self.source.contract(&v)?.char_poly(CharPolyMethod::Flats)?;
                let m = self.matroid.contract(self.points_of(&v))?.char_poly(CharPolyMethod::Recursive)?;
                report.check(q == m, || format!("V = {v:?}: chi_M/V = {q}, chi_P(M)/P(V) = {m}"));
            }
        }
        Ok(report)
    }

    /// `F_M` is isomorphic to `F_{P(M)}` via `P`, and for every flat `F`,
    /// `F_{M/F}` is isomorphic to `F_{P(M)/P(F)}` via
    /// `F' -> P(pi^{-1}(F')) - P(F)`.
    pub fn verify_flat_lattices(&self, instance: &str) -> Result<Report, ProjectivizeError> {
        let mut report = Report::new("flat lattice isomorphisms", instance);
        let qflats = self.source.flats();
        let mflats = self.matroid.flats();
        let top = self.lattice_map(&qflats, &mflats, |f| Ok(self.points_of(f)));
        let result = top.and_then(|map| check_isomorphism(&qflats, &mflats, &map));
        report.check(result.is_ok(), || format!("F_M vs F_P(M): {}", result.clone().unwrap_err()));

        let a = self.source.ambient();
        for f in qflats.elements() {
            let minor = self.source.contract(f)?;
            let pminor = self.matroid.contract(self.points_of(f))?;
            let quo = a.quotient(f);
            let qf = minor.flats();
            let mf = pminor.flats();
            let map = self.lattice_map(&qf, &mf, |g| {
                let pre = self.points_of(&quo.preimage(g)) & !self.points_of(f);
                relabel(&self.matroid, pre, &pminor)
            });
            let result = map.and_then(|map| check_isomorphism(&qf, &mf, &map));
            report.check(result.is_ok(), || format!("F = {f:?}: {}", result.clone().unwrap_err()));
        }
        Ok(report)
    }

    /// For `W + V = E` with `W` and `V` meeting in zero:
    /// `P(M/W) = (P(M)/S) \ Q_V^{*S}` with `S` the points of the RREF basis
    /// of `W`, matched through the transversal `E/W -> V`; and
    /// `P(M \ V^perp) = P(M) \ Q_V`.
    pub fn verify_minor_correspondence(
        &self,
        w: &Subspace,
        v: &Subspace,
        instance: &str,
    ) -> Result<Report, ProjectivizeError> {
        let a = self.source.ambient();
        let f = self.source.field();
        if w.dim() + v.dim() != a.n() || a.meet(w, v).dim() != 0 {
            return Err(ProjectivizeError::NotComplementary);
        }
        let mut report = Report::new("minor correspondence", instance);

        // Contraction side.
        let s: Mask = w.basis().iter().map(|r| self.point_of(r).expect("nonzero row")).fold(0, |m, i| m | 1 << i);
        let right = self.matroid.contract(s)?;
        let right = right.delete(relabel(&self.matroid, self.q_set_star(v, s)?, &right)?)?;
        let left = projectivize(&self.source.contract(w)?)?;
        let quo = a.quotient(w);
        // Coordinates in the basis [V; W] split x into its V and W parts.
        let mut rows = v.basis();
        rows.extend(w.basis());
        let split = Matrix::from_rows(&rows, a.n()).transpose().inverse(f).expect("complementary");
        let psi: Vec<usize> = left
            .points()
            .iter()
            .map(|p| {
                let x = quo.lift(p.vector());
                let coeffs = split.mul_vec(f, &x);
                let mut y = vec![0; a.n()];
                for (c, r) in coeffs.iter().zip(&rows).take(v.dim()) {
                    for (yi, &ri) in y.iter_mut().zip(r) {
                        *yi = f.add(*yi, f.mul(*c, ri));
                    }
                }
                let label = ProjPoint::normalize(f, &y).expect("x is not in W").to_string();
                right.index_of(&label).expect("lies in P(V)")
            })
            .collect();
        self.compare_ranks(left.matroid(), &right, &psi, "P(M/W)", &mut report);

        // Deletion side.
        let perp = a.orthogonal(v);
        let restricted = self.source.delete(&perp)?;
        let left = projectivize(&restricted)?;
        let right = self.matroid.delete(self.q_set(v))?;
        let basis = v.basis_matrix();
        let psi: Vec<usize> = left
            .points()
            .iter()
            .map(|p| {
                let y = basis.transpose().mul_vec(f, p.vector());
                let label = ProjPoint::normalize(f, &y).expect("nonzero").to_string();
                right.index_of(&label).expect("lies in P(V)")
            })
            .collect();
        self.compare_ranks(left.matroid(), &right, &psi, "P(M \\ V^perp)", &mut report);
        Ok(report)
    }

    fn compare_ranks(&self, left: &Matroid, right: &Matroid, psi: &[usize], what: &str, report: &mut Report) {
        report.check(left.size() == right.size(), || {
            format!("{what}: groundsets of size {} and {}", left.size(), right.size())
        });
        if left.size() != right.size() {
            return;
        }
        for s in subsets_to_check(left.size(), 7) {
            let t = bits(s).fold(0, |m, i| m | 1 << psi[i]);
            let (l, r) = (left.rank(s), right.rank(t));
            report.check(l == r, || format!("{what}: subset {s:#b} has ranks {l} and {r}"));
        }
    }

    /// The points `v` (least point), `e` (least point off `v^perp`, equal
    /// to `v`) and `Q_{v^perp}^{*e}` in canonical order.
    pub fn pivot_sets(&self) -> (usize, usize, Vec<usize>) {
        let v = 0;
        let e = 0;
        let hyper = self.source.ambient().orthogonal(&self.source.point_space(&self.points[v]));
        let q: Vec<usize> = bits(self.q_set(&hyper)).filter(|&i| i != e).collect();
        (v, e, q)
    }

    /// The telescoping identity
    /// `chi_{P(M)} = chi_{P(M) \ S_k} - sum_{i<k} chi_{P(M) \ S_i / w_{i+1}}`
    /// for every prefix `S_k` of `Q_{v^perp}^{*e}` listed in a seeded
    /// random order.
    pub fn verify_telescoping(&self, seed: u64, instance: &str) -> Result<Report, ProjectivizeError> {
        let mut report = Report::new("telescoping deletion identity", instance);
        let (_, _, mut order) = self.pivot_sets();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let chi = |m: &Matroid| m.char_poly(CharPolyMethod::Recursive);
        let target = chi(&self.matroid)?;
        let mut sum = Polynomial::zero();
        let mut deleted: Mask = 0;
        for (k, &w) in order.iter().enumerate() {
            let minor = self.matroid.delete(deleted)?;
            let wl = relabel(&self.matroid, 1 << w, &minor)?;
            sum += &chi(&minor.contract(wl)?)?;
            deleted |= 1 << w;
            let rhs = chi(&self.matroid.delete(deleted)?)? - &sum;
            report.check(rhs == target, || format!("k = {}: {rhs} != {target}", k + 1));
        }
        Ok(report)
    }
}

/// Coordinates of the points of a projectivization as row vectors.
pub fn point_vectors(p: &Projectivization) -> Vec<Vector> {
    p.points().iter().map(|x| x.vector().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn uniform_projectivizations() {
        let p = projectivize(&QMatroid::uniform(f2(), 1, 2)).unwrap();
        assert!(p.matroid().is_equivalent_under(&Matroid::uniform(1, 3).unwrap(), &[0, 1, 2]).unwrap());
        let p = projectivize(&QMatroid::uniform(f2(), 2, 2)).unwrap();
        assert!(p.matroid().is_equivalent_under(&Matroid::uniform(2, 3).unwrap(), &[0, 1, 2]).unwrap());
        let p = projectivize(&QMatroid::uniform(f2(), 0, 3)).unwrap();
        assert_eq!(p.matroid().loops(), p.matroid().full_mask());
    }

    #[test]
    fn too_many_points() {
        let qm = QMatroid::uniform(f2(), 2, 7);
        assert_eq!(projectivize(&qm).unwrap_err(), ProjectivizeError::TooLarge(127));
    }

    #[test]
    fn flat_images_and_preimages() {
        let qm = QMatroid::uniform(f2(), 1, 2);
        let p = projectivize(&qm).unwrap();
        let a = qm.ambient();
        assert_eq!(p.flat_image(&a.zero()), 0);
        assert_eq!(p.flat_preimage(0b011), None);
        assert_eq!(p.flat_preimage(0b111), Some(a.full()));
        assert_eq!(p.flat_preimage(0), Some(a.zero()));
    }

    #[test]
    fn q_sets() {
        let qm = QMatroid::uniform(f2(), 1, 2);
        let p = projectivize(&qm).unwrap();
        let a = qm.ambient();
        assert_eq!(p.q_set(&a.zero()), 0b111);
        let hyper = a.orthogonal(&a.span(&[vec![1, 1]]).unwrap());
        let q = p.q_set(&hyper);
        assert_eq!(q, 0b011);
        assert_eq!(p.q_set_star(&hyper, 0b001).unwrap().count_ones(), 1);
        assert_eq!(p.q_set_star(&hyper, 0b100), Err(ProjectivizeError::NotContained));
    }

    #[test]
    fn minor_correspondence_examples() {
        let qm = QMatroid::uniform(f2(), 2, 2);
        let p = projectivize(&qm).unwrap();
        let a = qm.ambient();
        let w = a.span(&[vec![1, 0]]).unwrap();
        let v = a.span(&[vec![0, 1]]).unwrap();
        assert!(p.verify_minor_correspondence(&w, &v, "U22").unwrap().passed());
        assert!(p.verify_minor_correspondence(&a.zero(), &a.full(), "U22").unwrap().passed());
        assert_eq!(p.verify_minor_correspondence(&w, &w, "U22").unwrap_err(), ProjectivizeError::NotComplementary);
    }

    #[test]
    fn char_poly_and_lattices_for_uniform() {
        for (k, n) in [(1, 2), (2, 2), (2, 3), (1, 3)] {
            let p = projectivize(&QMatroid::uniform(f2(), k, n)).unwrap();
            assert!(p.verify_char_poly("uniform", true).unwrap().passed());
            assert!(p.verify_flat_lattices("uniform").unwrap().passed());
            assert!(p.verify_telescoping(1, "uniform").unwrap().passed());
        }
    }
}
