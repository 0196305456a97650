//! Subspaces of F_q^n in canonical reduced-echelon form, projective points,
//! quotients and the Möbius function of the subspace lattice.
//!
//! Vectors are ordered by their little-endian radix-`q` code `sum v_i q^i`.
//! Subspaces are ordered by dimension and then by the codes of their RREF
//! rows, so the one-dimensional subspaces appear in the same order as the
//! projective points that span them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::gf::{Elem, Field, FiniteField, Matrix};
use crate::limits;

pub type Vector = Vec<Elem>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what}: {size} exceeds the size guard {limit}")]
    TooLarge { what: &'static str, size: u64, limit: u64 },
    #[error("first subspace is not contained in the second")]
    NotComparable,
}

impl LatticeError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, LatticeError::TooLarge { .. })
    }
}

/// Compares two equal-length vectors by their little-endian code.
pub fn cmp_vectors(a: &[Elem], b: &[Elem]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

pub fn vector_code(q: u32, v: &[Elem]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn vector_from_code(q: u32, n: usize, mut code: u64) -> Vector {
    (0..n)
        .map(|_| {
            let d = (code % q as u64) as Elem;
            code /= q as u64;
            d
        })
        .collect()
}

/// A subspace stored as its RREF basis with zero rows removed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    dim: usize,
    rows: Vec<Elem>,
}

impl Subspace {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim).map(|i| self.basis_row(i).to_vec()).collect()
    }

    /// Basis as a `dim x n` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::new(self.dim, self.n, self.rows.clone())
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).map(|i| self.basis_row(i).iter().position(|&x| x != 0).unwrap()).collect()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the
    /// subspace.
    fn reduce<F: FiniteField + ?Sized>(&self, f: &F, v: &mut [Elem]) {
        for i in 0..self.dim {
            let row = self.basis_row(i);
            let p = row.iter().position(|&x| x != 0).unwrap();
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then(self.dim.cmp(&other.dim)).then_with(|| {
            (0..self.dim)
                .map(|i| cmp_vectors(self.basis_row(i), other.basis_row(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vector(self.basis_row(i)))?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn fmt_vector(v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Canonical representative of a one-dimensional subspace: the spanning
/// vector whose first nonzero coordinate is `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint(Vector);

impl ProjPoint {
    pub fn normalize<F: FiniteField + ?Sized>(f: &F, v: &[Elem]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = f.inv(lead).unwrap();
        Some(ProjPoint(v.iter().map(|&x| f.mul(x, inv)).collect()))
    }

    pub fn vector(&self) -> &[Elem] {
        &self.0
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_vectors(&self.0, &other.0)
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_vector(&self.0))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

type MobiusCache = Arc<RwLock<HashMap<(Subspace, Subspace), i64>>>;

/// The space F_q^n.
#[derive(Clone)]
pub struct Ambient {
    field: Field,
    n: usize,
    mobius_cache: MobiusCache,
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^{}", self.field, self.n)
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n
    }
}

impl Ambient {
    pub fn new(field: Field, n: usize) -> Ambient {
        Ambient { field, n, mobius_cache: Arc::default() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`, saturating.
    pub fn size(&self) -> u64 {
        (self.q() as u64).saturating_pow(self.n as u32)
    }

    pub fn zero(&self) -> Subspace {
        Subspace { n: self.n, dim: 0, rows: Vec::new() }
    }

    pub fn full(&self) -> Subspace {
        Subspace { n: self.n, dim: self.n, rows: Matrix::identity(self.n).data().to_vec() }
    }

    fn check_len(&self, v: &[Elem]) -> Result<(), LatticeError> {
        if v.len() != self.n {
            return Err(LatticeError::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(())
    }

    pub fn span(&self, vectors: &[Vector]) -> Result<Subspace, LatticeError> {
        for v in vectors {
            self.check_len(v)?;
        }
        Ok(self.span_unchecked(vectors.iter().map(Vec::as_slice)))
    }

    pub(crate) fn span_unchecked<'a>(&self, vectors: impl IntoIterator<Item = &'a [Elem]>) -> Subspace {
        let mut data = Vec::new();
        let mut rows = 0;
        for v in vectors {
            data.extend_from_slice(v);
            rows += 1;
        }
        self.span_matrix(&Matrix::new(rows, self.n, data))
    }

    /// Row space of a matrix with `n` columns.
    pub fn span_matrix(&self, m: &Matrix) -> Subspace {
        debug_assert_eq!(m.cols(), self.n);
        let rref = m.rref(&self.field);
        let rows = rref.matrix.data()[..rref.rank * self.n].to_vec();
        Subspace { n: self.n, dim: rref.rank, rows }
    }

    /// Span of the columns of an `n x k` matrix.
    pub fn column_span(&self, m: &Matrix) -> Subspace {
        self.span_matrix(&m.transpose())
    }

    pub fn join(&self, u: &Subspace, v: &Subspace) -> Subspace {
        if u.dim == 0 {
            return v.clone();
        }
        if v.dim == 0 {
            return u.clone();
        }
        let mut data = u.rows.clone();
        data.extend_from_slice(&v.rows);
        self.span_matrix(&Matrix::new(u.dim + v.dim, self.n, data))
    }

    /// Intersection, computed as `(u^perp + v^perp)^perp`.
    pub fn meet(&self, u: &Subspace, v: &Subspace) -> Subspace {
        if self.leq(u, v) {
            return u.clone();
        }
        if self.leq(v, u) {
            return v.clone();
        }
        self.orthogonal(&self.join(&self.orthogonal(u), &self.orthogonal(v)))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal(&self, v: &Subspace) -> Subspace {
        let ns = v.basis_matrix().nullspace(&self.field);
        self.span_unchecked(ns.iter().map(Vec::as_slice))
    }

    pub fn contains_vector(&self, v: &Subspace, x: &[Elem]) -> bool {
        let mut x = x.to_vec();
        v.reduce(&self.field, &mut x);
        x.iter().all(|&c| c == 0)
    }

    /// `u <= v`.
    pub fn leq(&self, u: &Subspace, v: &Subspace) -> bool {
        u.dim <= v.dim && (0..u.dim).all(|i| self.contains_vector(v, u.basis_row(i)))
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let f = &self.field;
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    fn guard(&self, what: &'static str, limit_log2: u32) -> Result<(), LatticeError> {
        let limit = 1u64 << limit_log2.min(63);
        if self.size() > limit {
            return Err(LatticeError::TooLarge { what, size: self.size(), limit });
        }
        Ok(())
    }

    /// All subspaces (or those of one dimension) in canonical order.
    pub fn enumerate_subspaces(&self, dim: Option<usize>) -> Result<Vec<Subspace>, LatticeError> {
        self.guard("subspace enumeration", limits::get().enumerate_log2)?;
        let dims: Vec<usize> = match dim {
            Some(k) if k > self.n => Vec::new(),
            Some(k) => vec![k],
            None => (0..=self.n).collect(),
        };
        let mut out = Vec::new();
        for k in dims {
            for pivots in combinations(self.n, k) {
                self.push_echelon_forms(&pivots, &mut out);
            }
        }
        out.sort();
        Ok(out)
    }

    fn push_echelon_forms(&self, pivots: &[usize], out: &mut Vec<Subspace>) {
        let k = pivots.len();
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((pivots[i] + 1)..self.n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let q = self.q() as u64;
        for code in 0..q.pow(free.len() as u32) {
            let mut rows = vec![0; k * self.n];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i * self.n + p] = 1;
            }
            let mut c = code;
            for &(i, col) in &free {
                rows[i * self.n + col] = (c % q) as Elem;
                c /= q;
            }
            out.push(Subspace { n: self.n, dim: k, rows });
        }
    }

    /// Every vector of `v`, in increasing code order.
    pub fn vectors(&self, v: &Subspace) -> Vec<Vector> {
        let q = self.q() as u64;
        let f = &self.field;
        let mut out: Vec<Vector> = (0..q.pow(v.dim as u32))
            .map(|code| {
                let coeffs = vector_from_code(self.q(), v.dim, code);
                let mut x = vec![0; self.n];
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (xj, &r) in x.iter_mut().zip(v.basis_row(i)) {
                        *xj = f.add(*xj, f.mul(c, r));
                    }
                }
                x
            })
            .collect();
        out.sort_by(|a, b| cmp_vectors(a, b));
        out
    }

    /// Projective points of `v` in canonical order.
    pub fn projective_points(&self, v: &Subspace) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = self
            .vectors(v)
            .into_iter()
            .filter_map(|x| {
                let p = ProjPoint::normalize(&self.field, &x)?;
                (p.vector() == x.as_slice()).then_some(p)
            })
            .collect();
        out.sort();
        out
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.projective_points(&self.full())
    }

    pub fn point_space(&self, p: &ProjPoint) -> Subspace {
        self.span_unchecked([p.vector()])
    }

    pub fn quotient(&self, v: &Subspace) -> QuotientSpace {
        let pivots = v.pivots();
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        QuotientSpace { ambient: self.clone(), modulus: v.clone(), free }
    }

    /// All `z` with `u <= z <= v`.
    pub fn interval(&self, u: &Subspace, v: &Subspace) -> Result<Vec<Subspace>, LatticeError> {
        if !self.leq(u, v) {
            return Err(LatticeError::NotComparable);
        }
        // Coordinates with respect to the RREF basis of v are read off at its pivots.
        let k = v.dim;
        let local = Ambient::new(self.field.clone(), k);
        let vp = v.pivots();
        let u_local: Vec<Vector> = u.basis().iter().map(|r| vp.iter().map(|&p| r[p]).collect()).collect();
        let u_local = local.span_unchecked(u_local.iter().map(Vec::as_slice));
        let quo = local.quotient(&u_local);
        let above = Ambient::new(self.field.clone(), k - u.dim);
        let vb = v.basis_matrix();
        let mut out = Vec::new();
        for w in above.enumerate_subspaces(None)? {
            let z = quo.preimage(&w);
            out.push(self.span_matrix(&z.basis_matrix().mul(&vb, &self.field)));
        }
        out.sort();
        Ok(out)
    }

    /// Möbius function of the subspace lattice, computed from its recursive
    /// definition and memoized per ambient space.
    pub fn mobius(&self, u: &Subspace, v: &Subspace) -> Result<i64, LatticeError> {
        if !self.leq(u, v) {
            return Err(LatticeError::NotComparable);
        }
        if u == v {
            return Ok(1);
        }
        let key = (u.clone(), v.clone());
        if let Some(&m) = self.mobius_cache.read().unwrap().get(&key) {
            return Ok(m);
        }
        let mut sum = 0;
        for z in self.interval(u, v)? {
            if &z != v {
                sum += self.mobius(u, &z)?;
            }
        }
        self.mobius_cache.write().unwrap().insert(key, -sum);
        Ok(-sum)
    }
}

/// `E / V` with the canonical complement spanned by the standard basis
/// vectors at the non-pivot columns of `V`.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient: Ambient,
    modulus: Subspace,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn modulus(&self) -> &Subspace {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.ambient.field.clone(), self.dim())
    }

    /// Complement basis vectors as the columns of an `n x dim` matrix.
    pub fn complement_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ambient.n, self.dim());
        for (j, &c) in self.free.iter().enumerate() {
            m.set(c, j, 1);
        }
        m
    }

    /// Coordinates of `x + V`.
    pub fn project(&self, x: &[Elem]) -> Vector {
        let mut x = x.to_vec();
        self.modulus.reduce(&self.ambient.field, &mut x);
        self.free.iter().map(|&c| x[c]).collect()
    }

    pub fn lift(&self, c: &[Elem]) -> Vector {
        let mut x = vec![0; self.ambient.n];
        for (&col, &v) in self.free.iter().zip(c) {
            x[col] = v;
        }
        x
    }

    pub fn project_subspace(&self, u: &Subspace) -> Subspace {
        let rows: Vec<Vector> = u.basis().iter().map(|r| self.project(r)).collect();
        self.ambient().span_unchecked(rows.iter().map(Vec::as_slice))
    }

    /// `pi^{-1}(w)` for a subspace `w` of the quotient.
    pub fn preimage(&self, w: &Subspace) -> Subspace {
        let mut rows: Vec<Vector> = w.basis().iter().map(|r| self.lift(r)).collect();
        rows.extend(self.modulus.basis());
        self.ambient.span_unchecked(rows.iter().map(Vec::as_slice))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `mu(0, V)` for `dim V = k`: `(-1)^k q^(k(k-1)/2)`.
pub fn mobius_from_zero(k: usize, q: u32) -> i64 {
    let mag = (q as i64).pow((k * k.saturating_sub(1) / 2) as u32);
    if k.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Number of `k`-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u64 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}
