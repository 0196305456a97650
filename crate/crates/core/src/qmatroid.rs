//! q-matroids on F_q^n, given by a rank oracle on subspaces.
//!
//! A [`QMatroid`] is a view of a root oracle on F_q^N: an injective linear
//! map from the local groundspace into the root together with a contracted
//! root subspace `V`, so that `rho'(W) = rho(span(A W) + V) - rho(V)`.
//! Minors of minors compose these maps instead of nesting oracles. Every
//! view uses the standard dot product in its own coordinates.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::axioms::{Axiom, AxiomReport, CharPolyMethod, CheckMode};
use crate::flats::FlatLattice;
use crate::gf::{Elem, Field, Matrix};
use crate::lattice::{mobius_from_zero, Ambient, LatticeError, ProjPoint, Subspace, Vector};
use crate::limits;
use crate::poly::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QMatroidError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{what}: {size} exceeds the size guard {limit}")]
    TooLarge { what: &'static str, size: u64, limit: u64 },
    #[error("not a family of q-flats: {axiom} fails at {witness}")]
    NotAFlatFamily { axiom: Axiom, witness: String },
    #[error("subspace lives in F_q^{got}, expected F_q^{expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("bilinear form must be a symmetric invertible {0}x{0} matrix")]
    BadForm(usize),
}

impl QMatroidError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        match self {
            QMatroidError::TooLarge { .. } => true,
            QMatroidError::Lattice(e) => e.is_guard(),
            _ => false,
        }
    }
}

fn guard(a: &Ambient, what: &'static str, limit_log2: u32) -> Result<(), QMatroidError> {
    let limit = 1u64 << limit_log2.min(63);
    if a.size() > limit {
        return Err(QMatroidError::TooLarge { what, size: a.size(), limit });
    }
    Ok(())
}

type QRankFn = dyn Fn(&Subspace) -> u32 + Send + Sync;

struct Root {
    ambient: Ambient,
    rank: Box<QRankFn>,
    memo: RwLock<HashMap<Subspace, u32>>,
}

impl Root {
    fn rank(&self, v: &Subspace) -> u32 {
        if let Some(&r) = self.memo.read().unwrap().get(v) {
            return r;
        }
        let r = (self.rank)(v);
        self.memo.write().unwrap().insert(v.clone(), r);
        r
    }
}

/// Branch counts of one run of the recursive characteristic polynomial,
/// excluding memoized minors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecursionTrace {
    pub coloop_steps: u64,
    pub deletion_steps: u64,
}

#[derive(Clone)]
pub struct QMatroid {
    ambient: Ambient,
    root: Arc<Root>,
    /// Images of the local standard basis vectors in the root space, as the
    /// rows of an `n x N` matrix; `None` for the root itself.
    embed: Option<Matrix>,
    offset: Subspace,
    offset_rank: u32,
    memo: Arc<RwLock<HashMap<Subspace, u32>>>,
    points: Arc<OnceLock<Vec<ProjPoint>>>,
}

impl fmt::Debug for QMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatroid({:?}, rank={})", self.ambient, self.rank(&self.ambient.full()))
    }
}

impl QMatroid {
    pub fn from_rank_fn(field: Field, n: usize, rank: impl Fn(&Subspace) -> u32 + Send + Sync + 'static) -> QMatroid {
        let ambient = Ambient::new(field, n);
        let root = Root { ambient: ambient.clone(), rank: Box::new(rank), memo: RwLock::default() };
        QMatroid::view(ambient, Arc::new(root), None, None)
    }

    fn view(ambient: Ambient, root: Arc<Root>, embed: Option<Matrix>, offset: Option<Subspace>) -> QMatroid {
        let offset = offset.unwrap_or_else(|| root.ambient.zero());
        let offset_rank = root.rank(&offset);
        QMatroid { ambient, root, embed, offset, offset_rank, memo: Arc::default(), points: Arc::default() }
    }

    /// `U_{k,n}(q)`: `rho(V) = min(dim V, k)`.
    pub fn uniform(field: Field, k: usize, n: usize) -> QMatroid {
        QMatroid::from_rank_fn(field, n, move |v| v.dim().min(k) as u32)
    }

    /// The q-matroid whose flats are `flats`, after checking the flat axioms.
    pub fn from_flats(field: Field, n: usize, flats: Vec<Subspace>) -> Result<QMatroid, QMatroidError> {
        let ambient = Ambient::new(field.clone(), n);
        for f in &flats {
            if f.ambient_dim() != n {
                return Err(QMatroidError::AmbientMismatch { expected: n, got: f.ambient_dim() });
            }
        }
        let report = check_flat_family(&ambient, &flats)?;
        if let Some(v) = report.first() {
            return Err(QMatroidError::NotAFlatFamily {
                axiom: v.axiom,
                witness: format!("{:?}, {:?}", v.witness.0, v.witness.1),
            });
        }
        let amb = ambient.clone();
        let lattice = Arc::new(FlatLattice::from_elements(flats, |a, b| amb.leq(a, b)));
        let amb = ambient.clone();
        Ok(QMatroid::from_rank_fn(field, n, move |v| {
            let i = (0..lattice.len())
                .filter(|&i| amb.leq(v, lattice.get(i)))
                .min_by_key(|&i| lattice.height(i))
                .expect("top is a flat");
            lattice.height(i)
        }))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn field(&self) -> &Field {
        self.ambient.field()
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    fn check(&self, v: &Subspace) -> Result<(), QMatroidError> {
        if v.ambient_dim() != self.n() {
            return Err(QMatroidError::AmbientMismatch { expected: self.n(), got: v.ambient_dim() });
        }
        Ok(())
    }

    /// Image of a local subspace in the root space, including the offset.
    fn root_image(&self, v: &Subspace) -> Subspace {
        match &self.embed {
            None => v.clone(),
            Some(e) => {
                let img = v.basis_matrix().mul(e, self.field());
                let img = self.root.ambient.span_matrix(&img);
                self.root.ambient.join(&img, &self.offset)
            }
        }
    }

    pub fn rank(&self, v: &Subspace) -> u32 {
        debug_assert_eq!(v.ambient_dim(), self.n());
        if self.embed.is_none() {
            return self.root.rank(v);
        }
        if let Some(&r) = self.memo.read().unwrap().get(v) {
            return r;
        }
        let r = self.root.rank(&self.root_image(v)) - self.offset_rank;
        self.memo.write().unwrap().insert(v.clone(), r);
        r
    }

    pub fn rank_checked(&self, v: &Subspace) -> Result<u32, QMatroidError> {
        self.check(v)?;
        Ok(self.rank(v))
    }

    pub fn total_rank(&self) -> u32 {
        self.rank(&self.ambient.full())
    }

    fn with_basis_rows(&self, rows: &Matrix, offset: Subspace) -> QMatroid {
        let local = Ambient::new(self.field().clone(), rows.rows());
        let embed = match &self.embed {
            None => rows.clone(),
            Some(e) => rows.mul(e, self.field()),
        };
        QMatroid::view(local, Arc::clone(&self.root), Some(embed), Some(offset))
    }

    /// `M \ V`: the restriction to `V^perp`, in the coordinates of the RREF
    /// basis of `V^perp`.
    pub fn delete(&self, v: &Subspace) -> Result<QMatroid, QMatroidError> {
        self.check(v)?;
        let perp = self.ambient.orthogonal(v);
        Ok(self.with_basis_rows(&perp.basis_matrix(), self.offset.clone()))
    }

    /// `M | V`, in the coordinates of the RREF basis of `V`.
    pub fn restrict(&self, v: &Subspace) -> Result<QMatroid, QMatroidError> {
        self.check(v)?;
        Ok(self.with_basis_rows(&v.basis_matrix(), self.offset.clone()))
    }

    /// `M / V` on `E / V`, in the coordinates of the canonical quotient.
    pub fn contract(&self, v: &Subspace) -> Result<QMatroid, QMatroidError> {
        self.check(v)?;
        let quo = self.ambient.quotient(v);
        let offset = self.root_image(v);
        Ok(self.with_basis_rows(&quo.complement_matrix().transpose(), offset))
    }

    /// Dual for the standard dot product: `rho*(V) = dim V - rho(E) + rho(V^perp)`.
    pub fn dual(&self) -> QMatroid {
        let inner = self.clone();
        let total = self.total_rank();
        QMatroid::from_rank_fn(self.field().clone(), self.n(), move |v| {
            v.dim() as u32 + inner.rank(&inner.ambient.orthogonal(v)) - total
        })
    }

    /// Dual for the form `<x, y> = x^T B y`.
    pub fn dual_with_form(&self, b: &Matrix) -> Result<QMatroid, QMatroidError> {
        let n = self.n();
        if b.rows() != n || b.cols() != n || b.transpose() != *b || b.inverse(self.field()).is_none() {
            return Err(QMatroidError::BadForm(n));
        }
        let inner = self.clone();
        let total = self.total_rank();
        let b = b.clone();
        Ok(QMatroid::from_rank_fn(self.field().clone(), n, move |v| {
            let f = inner.field();
            let ns = v.basis_matrix().mul(&b, f).nullspace(f);
            let perp = inner.ambient.span_unchecked(ns.iter().map(Vec::as_slice));
            v.dim() as u32 + inner.rank(&perp) - total
        }))
    }

    /// Projective points of the groundspace, cached.
    pub fn points(&self) -> &[ProjPoint] {
        self.points.get_or_init(|| self.ambient.points())
    }

    pub fn point_space(&self, p: &ProjPoint) -> Subspace {
        self.ambient.point_space(p)
    }

    /// Span of all loops; it is itself a subspace of loops.
    pub fn loops(&self) -> Subspace {
        let loops: Vec<&[Elem]> =
            self.points().iter().filter(|p| self.rank(&self.point_space(p)) == 0).map(|p| p.vector()).collect();
        self.ambient.span_unchecked(loops)
    }

    pub fn closure(&self, v: &Subspace) -> Subspace {
        let r = self.rank(v);
        let mut rows: Vec<Vector> = v.basis();
        for p in self.points() {
            if self.ambient.contains_vector(v, p.vector()) {
                continue;
            }
            let vp = self.ambient.join(v, &self.point_space(p));
            if self.rank(&vp) == r {
                rows.push(p.vector().to_vec());
            }
        }
        self.ambient.span_unchecked(rows.iter().map(Vec::as_slice))
    }

    pub fn is_flat(&self, v: &Subspace) -> bool {
        let r = self.rank(v);
        self.points().iter().all(|p| {
            self.ambient.contains_vector(v, p.vector()) || self.rank(&self.ambient.join(v, &self.point_space(p))) > r
        })
    }

    /// `<w>` is a coloop when `rho(w^perp) = rho(E) - 1`.
    pub fn is_coloop(&self, w: &ProjPoint) -> bool {
        let perp = self.ambient.orthogonal(&self.point_space(w));
        self.rank(&perp) + 1 == self.total_rank()
    }

    /// Lattice of flats, generated by closing each flat plus one point.
    pub fn flats(&self) -> FlatLattice<Subspace> {
        let bottom = self.closure(&self.ambient.zero());
        let mut seen: HashSet<Subspace> = HashSet::from([bottom.clone()]);
        let mut layer = vec![bottom];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for f in layer {
                let mut covers: Vec<Subspace> = Vec::new();
                for p in self.points() {
                    let x = p.vector();
                    if self.ambient.contains_vector(&f, x) || covers.iter().any(|c| self.ambient.contains_vector(c, x))
                    {
                        continue;
                    }
                    let g = self.closure(&self.ambient.join(&f, &self.point_space(p)));
                    covers.push(g.clone());
                    if seen.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
            layer = next;
        }
        let amb = self.ambient.clone();
        FlatLattice::from_elements(seen.into_iter().collect(), move |a, b| amb.leq(a, b))
    }

    pub fn char_poly(&self, method: CharPolyMethod) -> Result<Polynomial, QMatroidError> {
        match method {
            CharPolyMethod::Definition => {
                let q = self.ambient.q();
                self.char_poly_definition_with(|v| Ok(mobius_from_zero(v.dim(), q)))
            }
            CharPolyMethod::Flats => Ok(self.char_poly_flats()),
            CharPolyMethod::Recursive => Ok(self.char_poly_recursive()),
        }
    }

    /// Subset-sum definition using the recursively computed Möbius function
    /// instead of its closed form.
    pub fn char_poly_definition_slow(&self) -> Result<Polynomial, QMatroidError> {
        let zero = self.ambient.zero();
        self.char_poly_definition_with(|v| Ok(self.ambient.mobius(&zero, v)?))
    }

    fn char_poly_definition_with(
        &self,
        mobius: impl Fn(&Subspace) -> Result<i64, QMatroidError>,
    ) -> Result<Polynomial, QMatroidError> {
        guard(&self.ambient, "subspace sum", limits::get().qchar_definition_log2)?;
        let total = self.total_rank() as usize;
        let mut coeffs = vec![0i64; total + 1];
        for v in self.ambient.enumerate_subspaces(None)? {
            coeffs[total - self.rank(&v) as usize] += mobius(&v)?;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }

    fn char_poly_flats(&self) -> Polynomial {
        if self.loops().dim() > 0 {
            return Polynomial::zero();
        }
        let lattice = self.flats();
        let total = self.total_rank() as usize;
        (0..lattice.len())
            .map(|i| Polynomial::monomial(lattice.mobius_from_bottom(i), total - self.rank(lattice.get(i)) as usize))
            .sum()
    }

    /// Recursion on the least projective point `v`, whose orthogonal
    /// complement is the hyperplane `x_1 = 0`; the least point off that
    /// hyperplane is `e = v` again. With `Q` the points off the hyperplane,
    ///
    /// * `chi(M) = chi(M \ v) - sum_{w in Q} chi(M / w)` when `v` is not a coloop,
    /// * `chi(M) = (x - 1) chi(M / e) - sum_{w in Q, w != e} chi(M / w)` when it is.
    ///
    /// Minors are memoized by their root interval, which determines them up
    /// to equivalence.
    fn char_poly_recursive(&self) -> Polynomial {
        self.char_poly_recursive_traced().0
    }

    /// The recursive polynomial together with how often each branch ran.
    pub fn char_poly_recursive_traced(&self) -> (Polynomial, RecursionTrace) {
        let mut memo = HashMap::new();
        let mut trace = RecursionTrace::default();
        let p = self.recursive_step(&mut memo, None, &mut trace);
        (p, trace)
    }

    /// Same recursion, with the sum over `Q` taken in a seeded random order.
    pub fn char_poly_recursive_shuffled(&self, seed: u64) -> Polynomial {
        let mut memo = HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.recursive_step(&mut memo, Some(&mut rng), &mut RecursionTrace::default())
    }

    fn recursive_step(
        &self,
        memo: &mut HashMap<(Subspace, Subspace), Polynomial>,
        mut rng: Option<&mut ChaCha8Rng>,
        trace: &mut RecursionTrace,
    ) -> Polynomial {
        let n = self.n();
        if n == 0 {
            return Polynomial::one();
        }
        let key = (self.root_image(&self.ambient.full()), self.offset.clone());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let mut e1 = vec![0; n];
        e1[0] = 1;
        let v = self.ambient.span_unchecked([e1.as_slice()]);
        let hyperplane = self.ambient.orthogonal(&v);
        let coloop = self.rank(&hyperplane) + 1 == self.total_rank();
        if coloop {
            trace.coloop_steps += 1;
        } else {
            trace.deletion_steps += 1;
        }
        let mut off: Vec<ProjPoint> = self.points().iter().filter(|p| p.vector()[0] != 0).cloned().collect();
        if let Some(r) = rng.as_deref_mut() {
            for i in (1..off.len()).rev() {
                off.swap(i, r.gen_range(0..=i));
            }
        }
        let mut sum = Polynomial::zero();
        for w in &off {
            if coloop && w.vector() == e1.as_slice() {
                continue;
            }
            let minor = self.contract(&self.point_space(w)).expect("same ambient");
            sum += &minor.recursive_step(memo, rng.as_deref_mut(), trace);
        }
        let lead = if coloop {
            let minor = self.contract(&v).expect("same ambient");
            &Polynomial::x_minus_one() * &minor.recursive_step(memo, rng.as_deref_mut(), trace)
        } else {
            self.delete(&v).expect("same ambient").recursive_step(memo, rng, trace)
        };
        let p = lead - sum;
        memo.insert(key, p.clone());
        p
    }

    /// Checks qR1-qR3. Monotonicity is checked on covers and submodularity on
    /// pairs of distinct covers of a common subspace; on a modular lattice
    /// the latter implies submodularity for all pairs.
    pub fn check_axioms(&self, mode: CheckMode) -> Result<AxiomReport<Subspace>, QMatroidError> {
        match mode {
            CheckMode::Exhaustive => {
                guard(&self.ambient, "exhaustive axiom check", limits::get().axioms_log2)?;
                let mut report = AxiomReport::new(true);
                for v in self.ambient.enumerate_subspaces(None)? {
                    self.check_at(&v, None, &mut report);
                }
                Ok(report)
            }
            CheckMode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut report = AxiomReport::new(false);
                let q = self.ambient.q();
                for _ in 0..samples {
                    let k = rng.gen_range(0..=self.n());
                    let vecs: Vec<Vector> =
                        (0..k).map(|_| (0..self.n()).map(|_| rng.gen_range(0..q)).collect()).collect();
                    let v = self.ambient.span(&vecs)?;
                    self.check_at(&v, Some(&mut rng), &mut report);
                }
                Ok(report)
            }
        }
    }

    fn check_at(&self, v: &Subspace, rng: Option<&mut ChaCha8Rng>, report: &mut AxiomReport<Subspace>) {
        let rv = self.rank(v);
        report.check(rv as usize <= v.dim(), Axiom::R1, || (v.clone(), v.clone()));
        let mut covers: BTreeSet<Subspace> = BTreeSet::new();
        for p in self.points() {
            if !self.ambient.contains_vector(v, p.vector()) {
                covers.insert(self.ambient.join(v, &self.point_space(p)));
            }
        }
        let mut covers: Vec<Subspace> = covers.into_iter().collect();
        if let Some(r) = rng {
            // Sampled mode checks a couple of random covers at each subspace.
            for i in (1..covers.len()).rev() {
                covers.swap(i, r.gen_range(0..=i));
            }
            covers.truncate(3);
        }
        for (i, x) in covers.iter().enumerate() {
            let rx = self.rank(x);
            report.check(rv <= rx, Axiom::R2, || (v.clone(), x.clone()));
            for y in &covers[i + 1..] {
                let ok = self.rank(&self.ambient.join(x, y)) + rv <= rx + self.rank(y);
                report.check(ok, Axiom::R3, || (x.clone(), y.clone()));
            }
        }
    }

    /// Whether `rho(V) = other.rho(A V)` for every `V`, with `A` an `n x n`
    /// matrix acting on column vectors.
    pub fn is_equivalent_under(&self, other: &QMatroid, a: &Matrix) -> Result<bool, QMatroidError> {
        if other.n() != self.n() || other.field() != self.field() {
            return Ok(false);
        }
        if a.rows() != self.n() || a.cols() != self.n() || a.inverse(self.field()).is_none() {
            return Ok(false);
        }
        let at = a.transpose();
        for v in self.ambient.enumerate_subspaces(None)? {
            let img = other.ambient.span_matrix(&v.basis_matrix().mul(&at, self.field()));
            if self.rank(&v) != other.rank(&img) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Searches GL(n, q) for an equivalence onto `other`, returning the
    /// matrix if one exists.
    pub fn find_equivalence(&self, other: &QMatroid) -> Result<Option<Matrix>, QMatroidError> {
        if other.n() != self.n() || other.field() != self.field() {
            return Ok(None);
        }
        guard(&self.ambient, "isomorphism search", limits::get().equivalence_log2)?;
        let n = self.n();
        let all = self.ambient.vectors(&self.ambient.full());
        // Subspaces of the first k coordinates that involve coordinate k.
        let mut by_prefix: Vec<Vec<Subspace>> = vec![Vec::new(); n];
        for s in self.ambient.enumerate_subspaces(None)? {
            let last = s.basis().iter().filter_map(|r| r.iter().rposition(|&x| x != 0)).max();
            if let Some(k) = last {
                by_prefix[k].push(s);
            }
        }
        let mut images: Vec<Vector> = Vec::new();
        let found = self.search_images(other, &all, &by_prefix, &mut images);
        Ok(found.then(|| Matrix::from_columns(&images, n)))
    }

    fn search_images(
        &self,
        other: &QMatroid,
        all: &[Vector],
        by_prefix: &[Vec<Subspace>],
        images: &mut Vec<Vector>,
    ) -> bool {
        let k = images.len();
        if k == self.n() {
            return true;
        }
        let f = self.field();
        let current = self.ambient.span_unchecked(images.iter().map(Vec::as_slice));
        for g in all {
            if self.ambient.contains_vector(&current, g) {
                continue;
            }
            images.push(g.clone());
            let a = Matrix::from_rows(images, self.n()).transpose();
            let ok = by_prefix[k].iter().all(|s| {
                let coords: Vec<Vector> = s.basis().iter().map(|r| r[..=k].to_vec()).collect();
                let img: Vec<Vector> = coords.iter().map(|c| a.mul_vec(f, c)).collect();
                let img = other.ambient.span_unchecked(img.iter().map(Vec::as_slice));
                self.rank(s) == other.rank(&img)
            });
            if ok && self.search_images(other, all, by_prefix, images) {
                return true;
            }
            images.pop();
        }
        false
    }
}

/// Checks qF1-qF3 for a family of subspaces of `ambient`.
pub fn check_flat_family(ambient: &Ambient, flats: &[Subspace]) -> Result<AxiomReport<Subspace>, QMatroidError> {
    let mut report = AxiomReport::new(true);
    let set: HashSet<&Subspace> = flats.iter().collect();
    let top = ambient.full();
    report.check(set.contains(&top), Axiom::F1, || (top.clone(), top.clone()));
    for a in flats {
        for b in flats {
            report.check(set.contains(&ambient.meet(a, b)), Axiom::F2, || (a.clone(), b.clone()));
        }
    }
    let points = ambient.points();
    for f in flats {
        let above: Vec<&Subspace> = flats.iter().filter(|g| *g != f && ambient.leq(f, g)).collect();
        let covers: Vec<&Subspace> =
            above.iter().copied().filter(|g| !above.iter().any(|h| h != g && ambient.leq(h, g))).collect();
        for p in &points {
            if ambient.contains_vector(f, p.vector()) {
                continue;
            }
            let holding = covers.iter().filter(|g| ambient.contains_vector(g, p.vector())).count();
            report.check(holding == 1, Axiom::F3, || (f.clone(), ambient.point_space(p)));
        }
    }
    Ok(report)
}
