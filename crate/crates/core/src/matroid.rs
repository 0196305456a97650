//! Matroids on at most 63 elements, given by a rank oracle on bitmasks.
//!
//! Minors are flattened: a [`Matroid`] is a view of a root oracle that
//! records which root elements survive and which were contracted, so chains
//! of deletions and contractions never nest oracles.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::axioms::{Axiom, AxiomReport, CharPolyMethod, CheckMode};
use crate::flats::FlatLattice;
use crate::limits;
use crate::poly::Polynomial;

pub type Mask = u64;

pub const MAX_ELEMENTS: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("{what}: {size} exceeds the size guard {limit}")]
    TooLarge { what: &'static str, size: u64, limit: u64 },
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("not a family of flats: {axiom} fails at {witness}")]
    NotAFlatFamily { axiom: Axiom, witness: String },
}

impl MatroidError {
    /// True when the failure is a size guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, MatroidError::TooLarge { .. })
    }
}

pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

pub fn mask_of(indices: impl IntoIterator<Item = usize>) -> Mask {
    indices.into_iter().fold(0, |m, i| m | 1 << i)
}

fn full(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

type RankFn = dyn Fn(Mask) -> u32 + Send + Sync;

struct Root {
    rank: Box<RankFn>,
    memo: RwLock<HashMap<Mask, u32>>,
}

impl Root {
    fn rank(&self, m: Mask) -> u32 {
        if let Some(&r) = self.memo.read().unwrap().get(&m) {
            return r;
        }
        let r = (self.rank)(m);
        self.memo.write().unwrap().insert(m, r);
        r
    }
}

#[derive(Clone)]
pub struct Matroid {
    labels: Vec<String>,
    root: Arc<Root>,
    /// Root index of each element; `None` marks an adjoined loop.
    elements: Vec<Option<u8>>,
    contracted: Mask,
    contracted_rank: u32,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, rank={})", self.size(), self.rank(self.full_mask()))
    }
}

impl Matroid {
    /// Wraps a rank function on subsets of `0..labels.len()`.
    pub fn from_rank_fn(
        labels: Vec<String>,
        rank: impl Fn(Mask) -> u32 + Send + Sync + 'static,
    ) -> Result<Matroid, MatroidError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge { what: "groundset", size: n as u64, limit: MAX_ELEMENTS as u64 });
        }
        let root = Root { rank: Box::new(rank), memo: RwLock::default() };
        Ok(Matroid {
            labels,
            root: Arc::new(root),
            elements: (0..n as u8).map(Some).collect(),
            contracted: 0,
            contracted_rank: 0,
        })
    }

    pub fn uniform(k: usize, n: usize) -> Result<Matroid, MatroidError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Matroid::from_rank_fn(labels, move |m| (m.count_ones() as usize).min(k) as u32)
    }

    /// The matroid whose flats are `flats`, after checking the flat axioms.
    pub fn from_flats(labels: Vec<String>, flats: Vec<Mask>) -> Result<Matroid, MatroidError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge { what: "groundset", size: n as u64, limit: MAX_ELEMENTS as u64 });
        }
        let report = check_flat_family(n, &flats);
        if let Some(v) = report.first() {
            return Err(MatroidError::NotAFlatFamily {
                axiom: v.axiom,
                witness: format!("{:#b}, {:#b}", v.witness.0, v.witness.1),
            });
        }
        let lattice = FlatLattice::from_elements(flats, |a: &Mask, b: &Mask| a & !b == 0);
        let lattice = Arc::new(lattice);
        Matroid::from_rank_fn(labels, move |a| {
            let cl = lattice.elements().iter().filter(|&&f| a & !f == 0).fold(full(64), |acc, &f| acc & f);
            lattice.height(lattice.index_of(&cl).expect("flat family closed under intersection"))
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn full_mask(&self) -> Mask {
        full(self.size())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MatroidError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| MatroidError::UnknownElement(label.to_string()))
    }

    fn check_mask(&self, m: Mask) -> Result<(), MatroidError> {
        if m & !self.full_mask() != 0 {
            return Err(MatroidError::UnknownElement(format!(
                "index {}",
                63 - (m & !self.full_mask()).leading_zeros()
            )));
        }
        Ok(())
    }

    fn to_root(&self, m: Mask) -> Mask {
        bits(m).filter_map(|i| self.elements[i]).fold(self.contracted, |acc, r| acc | 1 << r)
    }

    pub fn rank(&self, m: Mask) -> u32 {
        debug_assert!(m & !self.full_mask() == 0, "mask outside groundset");
        self.root.rank(self.to_root(m)) - self.contracted_rank
    }

    pub fn rank_of(&self, indices: &[usize]) -> u32 {
        self.rank(mask_of(indices.iter().copied()))
    }

    /// Root index of each local element, `None` for adjoined loops.
    pub fn root_indices(&self) -> &[Option<u8>] {
        &self.elements
    }

    fn keep(&self, kept: Mask, extra_contract: Mask) -> Matroid {
        let contracted = self.contracted | self.to_root(extra_contract);
        Matroid {
            labels: bits(kept).map(|i| self.labels[i].clone()).collect(),
            root: Arc::clone(&self.root),
            elements: bits(kept).map(|i| self.elements[i]).collect(),
            contracted,
            contracted_rank: self.root.rank(contracted),
        }
    }

    /// `M \ A`; remaining elements keep their relative order.
    pub fn delete(&self, a: Mask) -> Result<Matroid, MatroidError> {
        self.check_mask(a)?;
        Ok(self.keep(self.full_mask() & !a, 0))
    }

    /// `M / A`
    pub fn contract(&self, a: Mask) -> Result<Matroid, MatroidError> {
        self.check_mask(a)?;
        Ok(self.keep(self.full_mask() & !a, a))
    }

    /// `M | A`
    pub fn restrict(&self, a: Mask) -> Result<Matroid, MatroidError> {
        self.check_mask(a)?;
        Ok(self.keep(a, 0))
    }

    /// Dual matroid `r*(A) = |A| - r(S) + r(S \ A)`.
    pub fn dual(&self) -> Matroid {
        let inner = self.clone();
        let total = self.rank(self.full_mask());
        let all = self.full_mask();
        Matroid::from_rank_fn(self.labels.clone(), move |a| a.count_ones() + inner.rank(all & !a) - total)
            .expect("same size as the primal")
    }

    /// Adjoins one loop as the last element.
    pub fn loop_extension(&self, label: &str) -> Result<Matroid, MatroidError> {
        if self.size() >= MAX_ELEMENTS {
            return Err(MatroidError::TooLarge {
                what: "groundset",
                size: self.size() as u64 + 1,
                limit: MAX_ELEMENTS as u64,
            });
        }
        let mut m = self.clone();
        m.labels.push(label.to_string());
        m.elements.push(None);
        Ok(m)
    }

    pub fn closure(&self, a: Mask) -> Mask {
        let r = self.rank(a);
        (0..self.size()).filter(|&e| a >> e & 1 == 1 || self.rank(a | 1 << e) == r).fold(0, |m, e| m | 1 << e)
    }

    pub fn is_flat(&self, a: Mask) -> bool {
        self.closure(a) == a
    }

    pub fn loops(&self) -> Mask {
        self.closure(0)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(1 << e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        let all = self.full_mask();
        self.rank(all & !(1 << e)) + 1 == self.rank(all)
    }

    /// Lattice of flats, generated by closing each flat plus one element.
    pub fn flats(&self) -> FlatLattice<Mask> {
        let bottom = self.closure(0);
        let mut seen: HashSet<Mask> = HashSet::from([bottom]);
        let mut layer = vec![bottom];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for f in layer {
                let mut covered = f;
                for e in 0..self.size() {
                    if covered >> e & 1 == 1 {
                        continue;
                    }
                    let g = self.closure(f | 1 << e);
                    covered |= g;
                    if seen.insert(g) {
                        next.push(g);
                    }
                }
            }
            layer = next;
        }
        FlatLattice::from_elements(seen.into_iter().collect(), |a: &Mask, b: &Mask| a & !b == 0)
    }

    pub fn char_poly(&self, method: CharPolyMethod) -> Result<Polynomial, MatroidError> {
        match method {
            CharPolyMethod::Definition => self.char_poly_definition(),
            CharPolyMethod::Flats => Ok(self.char_poly_flats()),
            CharPolyMethod::Recursive => Ok(self.char_poly_recursive()),
        }
    }

    fn char_poly_definition(&self) -> Result<Polynomial, MatroidError> {
        let n = self.size();
        let limit = limits::get().matroid_definition_elems;
        if n > limit as usize {
            return Err(MatroidError::TooLarge { what: "subset sum groundset", size: n as u64, limit: limit as u64 });
        }
        let total = self.rank(self.full_mask()) as usize;
        let mut coeffs = vec![0i64; total + 1];
        for a in 0..=self.full_mask() {
            let sign = if a.count_ones() % 2 == 0 { 1 } else { -1 };
            coeffs[total - self.rank(a) as usize] += sign;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }

    fn char_poly_flats(&self) -> Polynomial {
        if self.loops() != 0 {
            return Polynomial::zero();
        }
        let lattice = self.flats();
        let total = self.rank(self.full_mask()) as usize;
        (0..lattice.len())
            .map(|i| Polynomial::monomial(lattice.mobius_from_bottom(i), total - self.rank(*lattice.get(i)) as usize))
            .sum()
    }

    /// Deletion-contraction on the least remaining element. Every node of the
    /// recursion is `M / C \ D` on a suffix `{k, ..., n-1}` of the groundset,
    /// and depends only on `k` and the closure of `C`, which serves as the
    /// memo key.
    fn char_poly_recursive(&self) -> Polynomial {
        let mut memo = HashMap::new();
        self.recursive_step(0, self.closure(0), &mut memo)
    }

    fn recursive_step(&self, k: usize, flat: Mask, memo: &mut HashMap<(usize, Mask), Polynomial>) -> Polynomial {
        let n = self.size();
        let rest = self.full_mask() & !full(k);
        if flat & rest != 0 {
            return Polynomial::zero();
        }
        if k == n {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(&(k, flat)) {
            return p.clone();
        }
        let e = 1u64 << k;
        let contracted = self.closure(flat | e);
        let is_coloop = self.rank((rest & !e) | flat) < self.rank(rest | flat);
        let p = if is_coloop {
            &Polynomial::x_minus_one() * &self.recursive_step(k + 1, contracted, memo)
        } else {
            self.recursive_step(k + 1, flat, memo) - self.recursive_step(k + 1, contracted, memo)
        };
        memo.insert((k, flat), p.clone());
        p
    }

    /// Checks R1-R3. Submodularity is checked on pairs `A+e, A+f` covering
    /// their meet, which implies it for all pairs; monotonicity likewise on
    /// single-element steps.
    pub fn check_axioms(&self, mode: CheckMode) -> Result<AxiomReport<Mask>, MatroidError> {
        let n = self.size();
        let samples: Box<dyn Iterator<Item = (Mask, usize, usize)>> = match mode {
            CheckMode::Exhaustive => {
                let limit = limits::get().matroid_axiom_elems;
                if n > limit as usize {
                    return Err(MatroidError::TooLarge {
                        what: "exhaustive axiom check",
                        size: n as u64,
                        limit: limit as u64,
                    });
                }
                Box::new(
                    (0..=self.full_mask()).flat_map(move |a| (0..n).flat_map(move |e| (e..n).map(move |f| (a, e, f)))),
                )
            }
            CheckMode::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let all = self.full_mask();
                let picks: Vec<_> = (0..samples)
                    .map(|_| {
                        let a = rng.gen::<u64>() & all;
                        (a, rng.gen_range(0..n.max(1)), rng.gen_range(0..n.max(1)))
                    })
                    .collect();
                Box::new(picks.into_iter())
            }
        };
        let mut report = AxiomReport::new(mode == CheckMode::Exhaustive);
        if n == 0 {
            report.check(self.rank(0) == 0, Axiom::R1, || (0, 0));
            return Ok(report);
        }
        for (a, e, f) in samples {
            let ra = self.rank(a);
            if e == f {
                report.check(ra <= a.count_ones(), Axiom::R1, || (a, a));
                let ae = a | 1 << e;
                report.check(ra <= self.rank(ae), Axiom::R2, || (a, ae));
                continue;
            }
            if a >> e & 1 == 1 || a >> f & 1 == 1 {
                continue;
            }
            let (ae, af) = (a | 1 << e, a | 1 << f);
            let ok = self.rank(ae | af) + ra <= self.rank(ae) + self.rank(af);
            report.check(ok, Axiom::R3, || (ae, af));
        }
        Ok(report)
    }

    /// Whether `r(A) = other.r(map(A))` for every `A`.
    pub fn is_equivalent_under(&self, other: &Matroid, map: &[usize]) -> Result<bool, MatroidError> {
        let n = self.size();
        if other.size() != n || map.len() != n {
            return Ok(false);
        }
        let limit = limits::get().subset_scan_log2;
        if n as u32 > limit {
            return Err(MatroidError::TooLarge {
                what: "equivalence check groundset",
                size: n as u64,
                limit: limit as u64,
            });
        }
        if mask_of(map.iter().copied()) != other.full_mask() {
            return Ok(false);
        }
        Ok((0..=self.full_mask()).all(|a| self.rank(a) == other.rank(bits(a).fold(0, |m, i| m | 1 << map[i]))))
    }

    /// Searches for a rank-preserving bijection onto `other`.
    pub fn find_equivalence(&self, other: &Matroid) -> Result<Option<Vec<usize>>, MatroidError> {
        let n = self.size();
        if other.size() != n {
            return Ok(None);
        }
        if n > 10 {
            return Err(MatroidError::TooLarge { what: "isomorphism search groundset", size: n as u64, limit: 10 });
        }
        fn go(a: &Matroid, b: &Matroid, map: &mut Vec<usize>, used: Mask) -> bool {
            let k = map.len();
            if k == a.size() {
                return true;
            }
            for t in 0..b.size() {
                if used >> t & 1 == 1 {
                    continue;
                }
                map.push(t);
                let ok = (0..1u64 << k).all(|s| {
                    let src = s | 1 << k;
                    let dst = bits(src).fold(0, |m, i| m | 1 << map[i]);
                    a.rank(src) == b.rank(dst)
                });
                if ok && go(a, b, map, used | 1 << t) {
                    return true;
                }
                map.pop();
            }
            false
        }
        let mut map = Vec::new();
        Ok(go(self, other, &mut map, 0).then_some(map))
    }
}

/// Checks F1-F3 for a family of subsets of `0..n`.
pub fn check_flat_family(n: usize, flats: &[Mask]) -> AxiomReport<Mask> {
    let mut report = AxiomReport::new(true);
    let set: HashSet<Mask> = flats.iter().copied().collect();
    let top = full(n);
    report.check(set.contains(&top), Axiom::F1, || (top, top));
    for &a in flats {
        for &b in flats {
            report.check(set.contains(&(a & b)), Axiom::F2, || (a, b));
        }
    }
    for &f in flats {
        let above: Vec<Mask> = flats.iter().copied().filter(|&g| g != f && f & !g == 0).collect();
        let covers: Vec<Mask> =
            above.iter().copied().filter(|&g| !above.iter().any(|&h| h != g && h & !g == 0)).collect();
        for e in 0..n {
            if f >> e & 1 == 1 {
                continue;
            }
            let holding: Vec<Mask> = covers.iter().copied().filter(|&g| g >> e & 1 == 1).collect();
            report.check(holding.len() == 1, Axiom::F3, || (f, 1 << e));
        }
    }
    report
}
