//! Maps between q-matroids and between their projectivizations.
//!
//! An [`LMap`] sends subspaces of `E1` to subspaces of `E2`. Linear maps are
//! given by an `n2 x n1` matrix acting on column vectors; arbitrary maps may
//! be tabulated and are then validated over every subspace.

use std::collections::HashMap;

use thiserror::Error;

use crate::flats::FlatLattice;
use crate::gf::{Elem, Matrix};
use crate::lattice::{vector_code, vector_from_code, Ambient, LatticeError, ProjPoint, Subspace, Vector};
use crate::limits;
use crate::matroid::{bits, Mask, Matroid, MatroidError};
use crate::projectivize::{projectivize, Projectivization, ProjectivizeError};
use crate::qmatroid::QMatroid;
use crate::report::Report;

/// Label of the adjoined loop in a loop extension.
pub const LOOP_LABEL: &str = "o";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("domain and codomain are over different fields")]
    FieldMismatch,
    #[error("map does not match the groundspaces: {0}")]
    AmbientMismatch(String),
    #[error("image of {0} is not a subspace")]
    NotLMap(String),
    #[error("{0} is not a flat of the domain")]
    NotAFlat(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Projectivize(#[from] ProjectivizeError),
}

impl MapError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            MapError::Lattice(e) => e.is_guard(),
            MapError::Matroid(e) => e.is_guard(),
            MapError::Projectivize(e) => e.is_guard(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Linear(Matrix),
    /// Image of every vector, indexed by its code.
    Table(Vec<Vector>),
}

#[derive(Clone, Debug)]
pub struct LMap {
    domain: Ambient,
    codomain: Ambient,
    kind: Kind,
}

impl LMap {
    /// `v -> A v` for an `n2 x n1` matrix `A`.
    pub fn from_matrix(domain: &Ambient, codomain: &Ambient, a: Matrix) -> Result<LMap, MapError> {
        if domain.q() != codomain.q() || a.data().iter().any(|&x| x >= domain.q()) {
            return Err(MapError::FieldMismatch);
        }
        if a.rows() != codomain.n() || a.cols() != domain.n() {
            return Err(MapError::AmbientMismatch(format!(
                "{}x{} matrix for F^{} -> F^{}",
                a.rows(),
                a.cols(),
                domain.n(),
                codomain.n()
            )));
        }
        Ok(LMap { domain: domain.clone(), codomain: codomain.clone(), kind: Kind::Linear(a) })
    }

    /// A tabulated map; `images[code(v)]` is the image of `v`. Every
    /// subspace is checked to have a subspace as its image.
    pub fn from_table(domain: &Ambient, codomain: &Ambient, images: Vec<Vector>) -> Result<LMap, MapError> {
        if domain.q() != codomain.q() {
            return Err(MapError::FieldMismatch);
        }
        if images.len() as u64 != domain.size()
            || images.iter().any(|v| v.len() != codomain.n() || v.iter().any(|&x| x >= codomain.q()))
        {
            return Err(MapError::AmbientMismatch("table does not cover the domain".into()));
        }
        let map = LMap { domain: domain.clone(), codomain: codomain.clone(), kind: Kind::Table(images) };
        for v in domain.enumerate_subspaces(None)? {
            let image = map.image_set(&v);
            let span = codomain.span_unchecked(image.iter().map(Vec::as_slice));
            if span.dim() > 20 || codomain.vectors(&span).len() != image.len() {
                return Err(MapError::NotLMap(format!("{v:?}")));
            }
        }
        Ok(map)
    }

    pub fn domain(&self) -> &Ambient {
        &self.domain
    }

    pub fn codomain(&self) -> &Ambient {
        &self.codomain
    }

    pub fn matrix(&self) -> Option<&Matrix> {
        match &self.kind {
            Kind::Linear(a) => Some(a),
            Kind::Table(_) => None,
        }
    }

    pub fn apply(&self, v: &[Elem]) -> Vector {
        match &self.kind {
            Kind::Linear(a) => a.mul_vec(self.domain.field(), v),
            Kind::Table(t) => t[vector_code(self.domain.q(), v) as usize].clone(),
        }
    }

    fn image_set(&self, v: &Subspace) -> Vec<Vector> {
        let mut out: Vec<Vector> = self.domain.vectors(v).iter().map(|x| self.apply(x)).collect();
        out.sort_by_key(|x| vector_code(self.codomain.q(), x));
        out.dedup();
        out
    }

    /// `sigma(V)`.
    pub fn image(&self, v: &Subspace) -> Subspace {
        match &self.kind {
            Kind::Linear(_) => {
                let rows: Vec<Vector> = v.basis().iter().map(|x| self.apply(x)).collect();
                self.codomain.span_unchecked(rows.iter().map(Vec::as_slice))
            }
            Kind::Table(_) => {
                let image = self.image_set(v);
                self.codomain.span_unchecked(image.iter().map(Vec::as_slice))
            }
        }
    }

    /// `{v : sigma(v) in F}`, or `None` when that set is not a subspace.
    pub fn preimage(&self, f: &Subspace) -> Option<Subspace> {
        match &self.kind {
            Kind::Linear(a) => {
                let perp = self.codomain.orthogonal(f);
                if perp.dim() == 0 {
                    return Some(self.domain.full());
                }
                let field = self.domain.field();
                let ns = perp.basis_matrix().mul(a, field).nullspace(field);
                Some(self.domain.span_unchecked(ns.iter().map(Vec::as_slice)))
            }
            Kind::Table(_) => {
                let q = self.domain.q();
                let n = self.domain.n();
                let hits: Vec<Vector> = (0..self.domain.size())
                    .map(|c| vector_from_code(q, n, c))
                    .filter(|v| self.codomain.contains_vector(f, &self.apply(v)))
                    .collect();
                let span = self.domain.span_unchecked(hits.iter().map(Vec::as_slice));
                (self.domain.vectors(&span).len() == hits.len()).then_some(span)
            }
        }
    }

    /// `sigma_L` on the extended projective spaces. Points are indexed in
    /// canonical order with `o` last in both spaces.
    pub fn induced_proj_map(&self) -> ExtendedProjMap {
        let from = self.domain.points();
        let to = self.codomain.points();
        let index: HashMap<&ProjPoint, usize> = to.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let o = to.len();
        let mut map: Vec<usize> = from
            .iter()
            .map(|p| match ProjPoint::normalize(self.codomain.field(), &self.apply(p.vector())) {
                Some(img) => index[&img],
                None => o,
            })
            .collect();
        map.push(o);
        ExtendedProjMap { map, codomain_size: o + 1 }
    }

    fn check_ambients(&self, m: &QMatroid, n: &QMatroid) -> Result<(), MapError> {
        if m.ambient() != &self.domain || n.ambient() != &self.codomain {
            return Err(MapError::AmbientMismatch(format!(
                "map F^{} -> F^{} between q-matroids on F^{} and F^{}",
                self.domain.n(),
                self.codomain.n(),
                m.n(),
                n.n()
            )));
        }
        Ok(())
    }

    /// First `V` with `rho_N(sigma(V)) > rho_M(V)`.
    pub fn qweak_witness(&self, m: &QMatroid, n: &QMatroid) -> Result<Option<Subspace>, MapError> {
        self.check_ambients(m, n)?;
        Ok(self.domain.enumerate_subspaces(None)?.into_iter().find(|v| n.rank(&self.image(v)) > m.rank(v)))
    }

    pub fn is_qweak(&self, m: &QMatroid, n: &QMatroid) -> Result<bool, MapError> {
        Ok(self.qweak_witness(m, n)?.is_none())
    }

    /// First flat `F` of `N` whose preimage is not a flat of `M`.
    pub fn qstrong_witness(&self, m: &QMatroid, n: &QMatroid) -> Result<Option<Subspace>, MapError> {
        self.check_ambients(m, n)?;
        let flats = n.flats();
        Ok(flats.elements().iter().find(|f| !self.preimage(f).is_some_and(|p| m.is_flat(&p))).cloned())
    }

    pub fn is_qstrong(&self, m: &QMatroid, n: &QMatroid) -> Result<bool, MapError> {
        Ok(self.qstrong_witness(m, n)?.is_none())
    }

    /// `sigma#(F) = cl_N(sigma(F))`.
    pub fn sigma_sharp(&self, m: &QMatroid, n: &QMatroid, f: &Subspace) -> Result<Subspace, MapError> {
        self.check_ambients(m, n)?;
        if !m.is_flat(f) {
            return Err(MapError::NotAFlat(format!("{f:?}")));
        }
        Ok(n.closure(&self.image(f)))
    }

    /// Evaluates join preservation of `sigma#` on pairs of flats and the atom
    /// condition, and compares their conjunction with [`LMap::is_qstrong`].
    /// See [`StrongConditions`] for why this can fail.
    pub fn check_strong_characterization(
        &self,
        m: &QMatroid,
        n: &QMatroid,
        instance: &str,
    ) -> Result<Report, MapError> {
        let c = self.strong_conditions(m, n)?;
        let mut report = Report::new("q-strong characterization", instance);
        let qstrong = self.is_qstrong(m, n)?;
        report.check(c.flat_clauses() == qstrong, || {
            format!(
                "q-strong = {qstrong}, join clause: {}, atom clause: {}, continuity: {}",
                c.join_violation.as_deref().unwrap_or("holds"),
                c.atom_violation.as_deref().unwrap_or("holds"),
                c.continuity_violation.as_deref().unwrap_or("holds")
            )
        });
        if qstrong {
            let weak = self.qweak_witness(m, n)?;
            report.check(weak.is_none(), || format!("q-strong map is not q-weak at {:?}", weak.unwrap()));
        }
        Ok(report)
    }

    /// The two conditions of the flat-level characterization, each with the
    /// first violation found.
    pub fn strong_conditions(&self, m: &QMatroid, n: &QMatroid) -> Result<StrongConditions, MapError> {
        self.check_ambients(m, n)?;
        let fm = m.flats();
        let fn_ = n.flats();
        let sharp: Vec<Subspace> = fm.elements().iter().map(|f| n.closure(&self.image(f))).collect();
        let idx = |s: &Subspace| fn_.index_of(s).expect("closure is a flat");
        let mut join_violation = None;
        'outer: for i in 0..fm.len() {
            for j in i + 1..fm.len() {
                let k = fm.join(i, j).expect("lattice");
                let rhs = fn_.join(idx(&sharp[i]), idx(&sharp[j])).expect("lattice");
                if idx(&sharp[k]) != rhs {
                    join_violation = Some(format!(
                        "sigma#({:?} v {:?}) = {:?}, joins of images = {:?}",
                        fm.get(i),
                        fm.get(j),
                        sharp[k],
                        fn_.get(rhs)
                    ));
                    break 'outer;
                }
            }
        }
        let atom_violation = fm.atoms().iter().find_map(|&a| {
            let h = fn_.height(idx(&sharp[a]));
            (h > 1).then(|| format!("atom {:?} goes to {:?} of height {h}", fm.get(a), sharp[a]))
        });
        let continuity_violation = self.domain.enumerate_subspaces(None)?.into_iter().find_map(|v| {
            let lhs = self.image(&m.closure(&v));
            let rhs = n.closure(&self.image(&v));
            (!self.codomain.leq(&lhs, &rhs)).then(|| format!("sigma(cl({v:?})) = {lhs:?} is not in {rhs:?}"))
        });
        Ok(StrongConditions { join_violation, atom_violation, continuity_violation })
    }

    /// Checks `sigma_L` against `sigma`: the commutation `P_o sigma =
    /// sigma_L P_o` on every vector, weak and strong agreement in both
    /// directions, `P sigma# = sigma_L# P` flat by flat, and strong implies
    /// weak at both levels.
    pub fn check_functor(&self, m: &QMatroid, n: &QMatroid, instance: &str) -> Result<Report, MapError> {
        self.check_ambients(m, n)?;
        let mut report = Report::new("maps and their projectivizations", instance);
        let sl = self.induced_proj_map();
        let pm = projectivize(m)?;
        let pn = projectivize(n)?;
        let mo = pm.matroid().loop_extension(LOOP_LABEL)?;
        let no = pn.matroid().loop_extension(LOOP_LABEL)?;
        let o1 = pm.points().len();
        let o2 = pn.points().len();

        let (q, dim) = (self.domain.q(), self.domain.n());
        for c in 0..self.domain.size() {
            let v = vector_from_code(q, dim, c);
            let lhs = pn.point_of(&self.apply(&v)).unwrap_or(o2);
            let rhs = sl.apply(pm.point_of(&v).unwrap_or(o1));
            report.check(lhs == rhs, || format!("P_o(sigma(v)) != sigma_L(P_o(v)) at v = {v:?}"));
        }

        let qweak = self.is_qweak(m, n)?;
        let weak = sl.is_weak(&mo, &no);
        report.check(qweak == weak, || format!("q-weak = {qweak} but weak = {weak}"));
        let qstrong = self.is_qstrong(m, n)?;
        let strong = sl.is_strong(&mo, &no);
        report.check(qstrong == strong, || format!("q-strong = {qstrong} but strong = {strong}"));
        report.check(!strong || weak, || "strong map that is not weak".into());
        report.check(!qstrong || qweak, || "q-strong map that is not q-weak".into());

        for f in m.flats().elements() {
            let lhs = pn.points_of(&n.closure(&self.image(f)));
            let rhs = sl.sharp(&mo, &no, pm.points_of(f)) & !(1 << o2);
            report.check(lhs == rhs, || format!("P(sigma#(F)) != sigma_L#(P(F)) at F = {f:?}"));
        }
        Ok(report)
    }
}

/// Conditions related to q-strong maps.
///
/// The flat-level clauses (joins of pairs of flats preserved by `sigma#`,
/// atoms sent to atoms or the bottom) are necessary but not sufficient: a
/// linear map whose kernel holds a non-loop can satisfy both without being
/// q-strong, since `sigma#` never sees non-flat subspaces. Continuity,
/// `sigma(cl_M(V)) <= cl_N(sigma(V))` for every `V`, is equivalent to
/// q-strong for linear maps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrongConditions {
    pub join_violation: Option<String>,
    pub atom_violation: Option<String>,
    pub continuity_violation: Option<String>,
}

impl StrongConditions {
    /// The join and atom clauses on flats.
    pub fn flat_clauses(&self) -> bool {
        self.join_violation.is_none() && self.atom_violation.is_none()
    }

    pub fn continuous(&self) -> bool {
        self.continuity_violation.is_none()
    }
}

/// A map between loop-extended groundsets, `o` being the last index of
/// each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedProjMap {
    map: Vec<usize>,
    codomain_size: usize,
}

impl ExtendedProjMap {
    pub fn new(map: Vec<usize>, codomain_size: usize) -> Result<ExtendedProjMap, MapError> {
        let bad = map.is_empty()
            || codomain_size == 0
            || map.iter().any(|&x| x >= codomain_size)
            || *map.last().unwrap() != codomain_size - 1;
        if bad {
            return Err(MapError::AmbientMismatch("o must map to o".into()));
        }
        Ok(ExtendedProjMap { map, codomain_size })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn image(&self, a: Mask) -> Mask {
        bits(a).fold(0, |m, i| m | 1 << self.map[i])
    }

    pub fn preimage(&self, b: Mask) -> Mask {
        (0..self.map.len()).filter(|&i| b >> self.map[i] & 1 == 1).fold(0, |m, i| m | 1 << i)
    }

    fn fits(&self, mo: &Matroid, no: &Matroid) -> bool {
        mo.size() == self.map.len() && no.size() == self.codomain_size
    }

    /// `r_No(sigma(A)) <= r_Mo(A)` for every `A`, sampled when there are
    /// more subsets than the scan limit.
    pub fn weak_witness(&self, mo: &Matroid, no: &Matroid) -> Option<Mask> {
        assert!(self.fits(mo, no), "map does not match the loop extensions");
        let n = mo.size();
        let limit = limits::get().subset_scan_log2 as usize;
        let check = |a: Mask| no.rank(self.image(a)) > mo.rank(a);
        if n <= limit {
            (0..1u64 << n).find(|&a| check(a))
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
            (0..1u64 << limit).map(|_| rng.gen::<u64>() & mo.full_mask()).find(|&a| check(a))
        }
    }

    pub fn is_weak(&self, mo: &Matroid, no: &Matroid) -> bool {
        self.weak_witness(mo, no).is_none()
    }

    /// First flat of `No` whose preimage is not a flat of `Mo`.
    pub fn strong_witness(&self, mo: &Matroid, no: &Matroid) -> Option<Mask> {
        assert!(self.fits(mo, no), "map does not match the loop extensions");
        no.flats().elements().iter().copied().find(|&f| !mo.is_flat(self.preimage(f)))
    }

    pub fn is_strong(&self, mo: &Matroid, no: &Matroid) -> bool {
        self.strong_witness(mo, no).is_none()
    }

    /// `sigma#(F) = cl_No(sigma(F))`.
    pub fn sharp(&self, mo: &Matroid, no: &Matroid, f: Mask) -> Mask {
        assert!(self.fits(mo, no), "map does not match the loop extensions");
        no.closure(self.image(f))
    }
}

/// Every q-matroid on `F_q^n` given by its flats, listed exhaustively from
/// all candidate rank functions. Intended for `q^n <= 4`.
pub fn all_qmatroids(ambient: &Ambient) -> Result<Vec<QMatroid>, MapError> {
    let subspaces = ambient.enumerate_subspaces(None)?;
    let n = ambient.n();
    let count = subspaces.len();
    if count > 8 {
        return Err(MapError::Lattice(LatticeError::TooLarge { what: "subspace list", size: count as u64, limit: 8 }));
    }
    let mut out: Vec<QMatroid> = Vec::new();
    let mut seen: Vec<Vec<Subspace>> = Vec::new();
    let mut ranks = vec![0u32; count];
    let total = (n as u32 + 1).pow(count as u32);
    for code in 0..total {
        let mut c = code;
        for r in ranks.iter_mut() {
            *r = c % (n as u32 + 1);
            c /= n as u32 + 1;
        }
        let ok = subspaces.iter().zip(&ranks).all(|(v, &r)| r as usize <= v.dim());
        if !ok {
            continue;
        }
        let table: HashMap<Subspace, u32> = subspaces.iter().cloned().zip(ranks.iter().copied()).collect();
        let qm = QMatroid::from_rank_fn(ambient.field().clone(), n, move |v| table[v]);
        let valid = qm.check_axioms(crate::axioms::CheckMode::Exhaustive).map(|r| r.is_ok()).unwrap_or(false);
        if valid {
            let flats = qm.flats().elements().to_vec();
            if !seen.contains(&flats) {
                seen.push(flats);
                out.push(qm);
            }
        }
    }
    Ok(out)
}

/// Helper for tests and the CLI: `sigma_L#` restricted to flats of `P(M)`.
pub fn flat_lattice_image(
    sl: &ExtendedProjMap,
    pm: &Projectivization,
    pn: &Projectivization,
) -> Result<Vec<Mask>, MapError> {
    let mo = pm.matroid().loop_extension(LOOP_LABEL)?;
    let no = pn.matroid().loop_extension(LOOP_LABEL)?;
    let o2 = pn.points().len();
    let flats: FlatLattice<Mask> = pm.matroid().flats();
    Ok(flats.elements().iter().map(|&f| sl.sharp(&mo, &no, f) & !(1 << o2)).collect())
}
