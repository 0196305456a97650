//! Finite fields GF(q), extensions GF(q^m) and dense matrices over them.
//!
//! Elements are plain `u32` codes. For a field of order `p^d` over the prime
//! field the code of `c_0 + c_1 x + ... + c_{d-1} x^{d-1}` is `sum c_j p^j`;
//! an extension GF(q^m) encodes its power-basis coordinates the same way with
//! radix `q`. Consequently `0` and `1` are always zero and one, and an element
//! of the base field keeps its code when viewed in the extension.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type Elem = u32;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NonPrimePower(u32),
    #[error("field order {0} is above the supported maximum")]
    TooLarge(u64),
    #[error("modulus is reducible over GF({q})")]
    Reducible { q: u32 },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("no built-in modulus for GF({q}^{m})")]
    NoDefault { q: u32, m: u32 },
    #[error("basis is linearly dependent over the base field")]
    DependentBasis,
}

/// Arithmetic shared by [`Field`], [`ExtField`] and the internal prime fields.
pub trait FiniteField: Send + Sync + fmt::Debug {
    fn order(&self) -> u32;
    fn characteristic(&self) -> u32;
    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn neg(&self, a: Elem) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Option<Elem>;

    fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Digit-wise addition of two radix-`p` codes.
fn digit_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut out, mut scale) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn digit_neg(p: u32, mut a: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let (mut out, mut scale) = (0, 1);
    while a > 0 {
        out += ((p - a % p) % p) * scale;
        a /= p;
        scale *= p;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, d)` with `q = p^d`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q as u64)[0] as u32;
    let (mut r, mut d) = (q, 0);
    while r % p == 0 {
        r /= p;
        d += 1;
    }
    (r == 1).then_some((p, d))
}

/// Log/antilog/Zech tables for a field whose additive structure is radix-`p`
/// digit addition.
#[derive(Debug)]
struct Tables {
    p: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg: Vec<u32>,
}

impl Tables {
    fn build(p: u32, order: u32, slow_mul: impl Fn(u32, u32) -> u32) -> Tables {
        let n = order - 1;
        let slow_pow = |a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let factors = prime_factors(n as u64);
        let generator = (1..order)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, n as u64 / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0; 2 * n as usize];
        let mut log = vec![NO_LOG; order as usize];
        let mut x = 1;
        for i in 0..n as usize {
            exp[i] = x;
            exp[i + n as usize] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, generator);
        }
        let zech = (0..n as usize)
            .map(|d| match digit_add(p, 1, exp[d]) {
                0 => NO_LOG,
                s => log[s as usize],
            })
            .collect();
        let neg = (0..order).map(|a| digit_neg(p, a)).collect();
        Tables { p, order, exp, log, zech, neg }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let n = self.order - 1;
        let (la, lb) = (self.log[a as usize], self.log[b as usize]);
        let d = (lb + n - la) % n;
        match self.zech[d as usize] {
            NO_LOG => 0,
            z => self.exp[(la + z) as usize],
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }
}

#[derive(Debug, Clone, Copy)]
struct PrimeField {
    p: u32,
}

impl FiniteField for PrimeField {
    fn order(&self) -> u32 {
        self.p
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        (a + b) % self.p
    }
    fn neg(&self, a: Elem) -> Elem {
        (self.p - a) % self.p
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        a * b % self.p
    }
    fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.pow(a, self.p as u64 - 2))
    }
}

/// Coefficient vectors over a base field, little-endian, used to build
/// extension tables and to test irreducibility.
mod polyarith {
    use super::{Elem, FiniteField};

    pub fn trim(mut a: Vec<Elem>) -> Vec<Elem> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo a nonzero `b`.
    pub fn rem<F: FiniteField + ?Sized>(f: &F, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = f.inv(*b.last().expect("nonzero divisor")).unwrap();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(*r.last().unwrap(), lead_inv);
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
            }
            r = trim(r);
        }
        r
    }

    pub fn mul<F: FiniteField + ?Sized>(f: &F, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        trim(out)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// radix-`q` digits of `code`.
    pub fn monic_from_code(q: u32, deg: u32, mut code: u64) -> Vec<Elem> {
        let mut out = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            out.push((code % q as u64) as Elem);
            code /= q as u64;
        }
        out.push(1);
        out
    }

    pub fn is_irreducible<F: FiniteField + ?Sized>(f: &F, modulus: &[Elem]) -> bool {
        let m = modulus.len() as u32 - 1;
        let q = f.order();
        for d in 1..=m / 2 {
            for code in 0..(q as u64).pow(d) {
                let g = monic_from_code(q, d, code);
                if rem(f, modulus, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn digits(q: u32, mut a: u32, len: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(a % q);
            a /= q;
        }
        out
    }

    pub fn undigits(q: u32, c: &[Elem]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * q + d)
    }
}

fn check_modulus<F: FiniteField + ?Sized>(base: &F, m: u32, modulus: &[Elem]) -> Result<(), FieldError> {
    let q = base.order();
    if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= q) {
        return Err(FieldError::BadModulus { expected: m });
    }
    if !polyarith::is_irreducible(base, modulus) {
        return Err(FieldError::Reducible { q });
    }
    Ok(())
}

/// Least monic irreducible of degree `m`, ordered by the radix-`q` code of
/// its lower coefficients.
fn default_modulus<F: FiniteField + ?Sized>(base: &F, m: u32) -> Result<Vec<Elem>, FieldError> {
    let q = base.order();
    (0..(q as u64).pow(m))
        .map(|code| polyarith::monic_from_code(q, m, code))
        .find(|g| polyarith::is_irreducible(base, g))
        .ok_or(FieldError::NoDefault { q, m })
}

fn extension_tables<F: FiniteField + ?Sized>(base: &F, m: u32, modulus: &[Elem]) -> Tables {
    let q = base.order();
    let order = q.pow(m);
    let slow_mul = |a: u32, b: u32| {
        let pa = polyarith::digits(q, a, m as usize);
        let pb = polyarith::digits(q, b, m as usize);
        let prod = polyarith::mul(base, &pa, &pb);
        polyarith::undigits(q, &polyarith::rem(base, &prod, modulus))
    };
    Tables::build(base.characteristic(), order, slow_mul)
}

#[derive(Debug)]
struct FieldInner {
    q: u32,
    p: u32,
    degree: u32,
    modulus: Vec<Elem>,
    tables: Tables,
}

/// GF(q) for a prime power `q <= 256`.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.q == other.inner.q && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(q: u32) -> Result<Field, FieldError> {
        let (p, d) = prime_power(q).ok_or(FieldError::NonPrimePower(q))?;
        if q > 256 {
            return Err(FieldError::TooLarge(q as u64));
        }
        let prime = PrimeField { p };
        let modulus = default_modulus(&prime, d)?;
        let tables = extension_tables(&prime, d, &modulus);
        Ok(Field { inner: Arc::new(FieldInner { q, p, degree: d, modulus, tables }) })
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// Defining polynomial over the prime field, little-endian and monic.
    pub fn modulus(&self) -> &[Elem] {
        &self.inner.modulus
    }
}

impl FiniteField for Field {
    fn order(&self) -> u32 {
        self.inner.q
    }
    fn characteristic(&self) -> u32 {
        self.inner.p
    }
    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.inner.tables.add(a, b)
    }
    #[inline]
    fn neg(&self, a: Elem) -> Elem {
        self.inner.tables.neg[a as usize]
    }
    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.tables.mul(a, b)
    }
    #[inline]
    fn inv(&self, a: Elem) -> Option<Elem> {
        self.inner.tables.inv(a)
    }
}

#[derive(Debug)]
struct ExtInner {
    base: Field,
    m: u32,
    modulus: Vec<Elem>,
    tables: Arc<Tables>,
    basis: Vec<Elem>,
    /// Row-major m x m matrix sending power-basis coordinates to coordinates
    /// in `basis`; `None` when `basis` is the power basis.
    to_basis: Option<Matrix>,
}

/// GF(q^m) together with an ordered basis over GF(q).
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.base.q(), self.inner.m)
    }
}

impl ExtField {
    /// Builds GF(q^m). Without an explicit modulus the least monic
    /// irreducible of degree `m` is used. The basis is the power basis of the
    /// class of `x`.
    pub fn new(base: &Field, m: u32, modulus: Option<Vec<Elem>>) -> Result<ExtField, FieldError> {
        if m == 0 {
            return Err(FieldError::BadModulus { expected: 1 });
        }
        let order = (base.q() as u64).pow(m);
        if order > 1 << 16 {
            return Err(FieldError::TooLarge(order));
        }
        let modulus = match modulus {
            Some(g) => {
                check_modulus(base, m, &g)?;
                g
            }
            None => default_modulus(base, m)?,
        };
        let tables = Arc::new(extension_tables(base, m, &modulus));
        let basis = (0..m).map(|j| base.q().pow(j)).collect();
        Ok(ExtField { inner: Arc::new(ExtInner { base: base.clone(), m, modulus, tables, basis, to_basis: None }) })
    }

    /// Same field, different ordered basis.
    pub fn with_basis(&self, basis: Vec<Elem>) -> Result<ExtField, FieldError> {
        let m = self.m() as usize;
        let base = self.base();
        if basis.len() != m || basis.iter().any(|&b| b >= self.order()) {
            return Err(FieldError::DependentBasis);
        }
        // Columns are the power-basis coordinates of the new basis vectors.
        let mut cols = Matrix::zeros(m, m);
        for (j, &b) in basis.iter().enumerate() {
            for (i, c) in polyarith::digits(base.q(), b, m).into_iter().enumerate() {
                cols.set(i, j, c);
            }
        }
        let inv = cols.inverse(base).ok_or(FieldError::DependentBasis)?;
        let inner = ExtInner {
            base: base.clone(),
            m: self.m(),
            modulus: self.inner.modulus.clone(),
            tables: Arc::clone(&self.inner.tables),
            basis,
            to_basis: Some(inv),
        };
        Ok(ExtField { inner: Arc::new(inner) })
    }

    pub fn base(&self) -> &Field {
        &self.inner.base
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn modulus(&self) -> &[Elem] {
        &self.inner.modulus
    }

    pub fn basis(&self) -> &[Elem] {
        &self.inner.basis
    }

    /// Class of `x`; equals `1` when `m = 1`.
    pub fn generator(&self) -> Elem {
        if self.m() == 1 {
            1
        } else {
            self.base().q()
        }
    }

    /// Coordinates of `a` in the field's basis.
    pub fn coords(&self, a: Elem) -> Vec<Elem> {
        let m = self.m() as usize;
        let power = polyarith::digits(self.base().q(), a, m);
        match &self.inner.to_basis {
            None => power,
            Some(t) => t.mul_vec(self.base(), &power),
        }
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        c.iter().zip(self.basis()).fold(0, |acc, (&ci, &g)| self.add(acc, self.mul(ci, g)))
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> u32 {
        self.inner.tables.order
    }
    fn characteristic(&self) -> u32 {
        self.inner.tables.p
    }
    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.inner.tables.add(a, b)
    }
    #[inline]
    fn neg(&self, a: Elem) -> Elem {
        self.inner.tables.neg[a as usize]
    }
    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.tables.mul(a, b)
    }
    #[inline]
    fn inv(&self, a: Elem) -> Option<Elem> {
        self.inner.tables.inv(a)
    }
}

/// Dense row-major matrix of field element codes. The field is supplied to
/// each operation rather than stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows must share a length; `cols` is only consulted when `rows` is empty.
    pub fn from_rows(rows: &[Vec<Elem>], cols: usize) -> Matrix {
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<Elem>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column has wrong length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn mul<F: FiniteField + ?Sized>(&self, other: &Matrix, f: &F) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: FiniteField + ?Sized>(&self, f: &F, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    pub fn rref<F: FiniteField + ?Sized>(&self, f: &F) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank<F: FiniteField + ?Sized>(&self, f: &F) -> usize {
        self.rref(f).rank
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace<F: FiniteField + ?Sized>(&self, f: &F) -> Vec<Vec<Elem>> {
        let rref = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0; self.cols];
                x[free] = 1;
                for (i, &p) in rref.pivots.iter().enumerate() {
                    x[p] = f.neg(rref.matrix.get(i, free));
                }
                x
            })
            .collect()
    }

    pub fn inverse<F: FiniteField + ?Sized>(&self, f: &F) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let rref = aug.rref(f);
        if rref.pivots.iter().copied().take(n).ne(0..n) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rref.matrix.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// The `n x m` matrix over GF(q) whose i-th row holds the coordinates of
/// `v_i` in the basis of `ext`.
pub fn gamma_expand(ext: &ExtField, v: &[Elem]) -> Matrix {
    let m = ext.m() as usize;
    let mut out = Matrix::zeros(v.len(), m);
    for (i, &x) in v.iter().enumerate() {
        for (j, c) in ext.coords(x).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}
