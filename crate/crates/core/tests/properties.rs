//! Randomized invariants of q-matroids, their projectivizations, maps and
//! codes.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qproj_core::codes::{projective_rep_matrix, weight_enumerator_matroid, weight_enumerator_q};
use qproj_core::corpus::{random_code, random_codes};
use qproj_core::matroid::bits;
use qproj_core::{
    projectivize, Ambient, CharPolyMethod, CheckMode, ExtField, Field, FiniteField, LMap, LinearCode, Mask, Matrix,
    Matroid, QMatroid,
};

const METHODS: [CharPolyMethod; 3] = [CharPolyMethod::Definition, CharPolyMethod::Flats, CharPolyMethod::Recursive];

fn code(seed: u64, q: u32, ms: &[u32], max_n: usize) -> LinearCode {
    random_codes(seed, 1, q, ms, max_n).remove(0)
}

/// A small code q-matroid or uniform q-matroid.
fn small_qmatroid(seed: u64) -> QMatroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match rng.gen_range(0..4) {
        0 => {
            let q = [2, 3][rng.gen_range(0..2)];
            let n = rng.gen_range(1..=3);
            QMatroid::uniform(Field::new(q).unwrap(), rng.gen_range(0..=n), n)
        }
        1 => code(rng.gen(), 3, &[1, 2], 2).associated_qmatroid(),
        _ => code(rng.gen(), 2, &[1, 2, 3], 3).associated_qmatroid(),
    }
}

/// Moves a set of elements of `from` to `to` by label.
fn relabel(from: &Matroid, a: Mask, to: &Matroid) -> Mask {
    bits(a).fold(0, |m, i| m | 1 << to.index_of(from.label(i)).unwrap())
}

fn random_invertible(f: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = Matrix::new(n, n, (0..n * n).map(|_| rng.gen_range(0..f.q())).collect());
        if m.inverse(f).is_some() {
            return m;
        }
    }
}

fn same_ranks(a: &QMatroid, b: &QMatroid) -> bool {
    a.ambient().enumerate_subspaces(None).unwrap().iter().all(|v| a.rank(v) == b.rank(v))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn code_qmatroids_satisfy_axioms(seed in any::<u64>()) {
        let c = code(seed, 2, &[1, 2, 3], 4);
        let report = c.associated_qmatroid().check_axioms(CheckMode::Exhaustive).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report.first());
        let m = c.associated_matroid().unwrap();
        prop_assert!(m.check_axioms(CheckMode::Exhaustive).unwrap().is_ok());
    }

    #[test]
    fn char_poly_methods_agree(seed in any::<u64>()) {
        let qm = small_qmatroid(seed);
        let polys: Vec<_> = METHODS.iter().map(|&m| qm.char_poly(m).unwrap()).collect();
        prop_assert_eq!(&polys[0], &polys[1]);
        prop_assert_eq!(&polys[0], &polys[2]);
        prop_assert_eq!(&polys[0], &qm.char_poly_recursive_shuffled(seed));
        if qm.n() >= 1 {
            prop_assert_eq!(polys[0].eval(1), 0);
        }
        if qm.loops().dim() > 0 {
            prop_assert!(polys[0].is_zero());
        } else {
            prop_assert_eq!(polys[0].degree(), Some(qm.total_rank() as usize));
        }
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let qm = small_qmatroid(seed);
        let d = qm.dual();
        prop_assert_eq!(d.total_rank() as usize, qm.n() - qm.total_rank() as usize);
        prop_assert!(same_ranks(&d.dual(), &qm));
    }

    #[test]
    fn dual_for_a_form_is_equivalent_to_the_standard_dual(seed in any::<u64>()) {
        let qm = small_qmatroid(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = qm.field().clone();
        let n = qm.n();
        // A symmetric invertible form P^T P.
        let p = random_invertible(&f, n, &mut rng);
        let b = p.transpose().mul(&p, &f);
        if b.inverse(&f).is_none() {
            return Ok(());
        }
        let db = qm.dual_with_form(&b).unwrap();
        prop_assert!(db.is_equivalent_under(&qm.dual(), &b).unwrap());
        prop_assert!(same_ranks(&qm.dual_with_form(&Matrix::identity(n)).unwrap(), &qm.dual()));
    }

    #[test]
    fn rank_support_does_not_depend_on_the_basis(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = Field::new(2).unwrap();
        let m = rng.gen_range(2..=3);
        let ext = ExtField::new(&base, m, None).unwrap();
        let gamma: Vec<u32> = loop {
            let g: Vec<u32> = (0..m).map(|_| rng.gen_range(1..ext.order())).collect();
            if ext.with_basis(g.clone()).is_ok() {
                break g;
            }
        };
        let other = ext.with_basis(gamma).unwrap();
        let n = rng.gen_range(1..=4);
        let c = random_code(&ext, rng.gen_range(1..=n), n, &mut rng);
        let c2 = LinearCode::new(&other, c.generator().clone()).unwrap();
        for v in c.codewords().unwrap() {
            prop_assert_eq!(c.rank_support(v), c2.rank_support(v));
        }
    }

    #[test]
    fn rank_does_not_depend_on_the_basis_of_v(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = code(rng.gen(), 2, &[2, 3], 4);
        let qm = c.associated_qmatroid();
        let f = c.ext().base().clone();
        for v in qm.ambient().enumerate_subspaces(None).unwrap() {
            if v.dim() == 0 {
                continue;
            }
            let p = random_invertible(&f, v.dim(), &mut rng);
            let y = p.mul(&v.basis_matrix(), &f).transpose();
            let r = c.generator().mul(&y, c.ext()).rank(c.ext()) as u32;
            prop_assert_eq!(r, qm.rank(&v));
        }
    }

    /// `v . w = 0` exactly when `w` lies in `S_R(v)^perp`.
    #[test]
    fn dot_product_vanishes_on_the_dual_of_the_support(seed in any::<u64>()) {
        let c = code(seed, 2, &[2, 3], 3);
        let a = c.ambient();
        for v in c.codewords().unwrap() {
            let perp = a.orthogonal(&c.rank_support(v));
            for w in a.vectors(&a.full()) {
                let dot = v.iter().zip(&w).fold(0, |s, (&x, &y)| c.ext().add(s, c.ext().mul(x, y)));
                prop_assert_eq!(dot == 0, a.contains_vector(&perp, &w));
            }
        }
    }

    /// `S_H(V H) = PE - P(S_R(V)^perp)` for sets of codewords, and the
    /// complement is a flat at both levels.
    #[test]
    fn hamming_support_of_the_decomposition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = code(rng.gen(), 2, &[2, 3], 3);
        let a = c.ambient();
        let h = projective_rep_matrix(&a).unwrap();
        let ch = c.hamming_assoc_code(Some(&h)).unwrap();
        let pm = projectivize(&c.associated_qmatroid()).unwrap();
        let words = c.codewords().unwrap();
        for _ in 0..16 {
            let t = rng.gen_range(1..=3);
            let set: Vec<_> = (0..t).map(|_| words[rng.gen_range(0..words.len())].clone()).collect();
            let w = c.rank_support_of_set(&set);
            let images: Vec<_> = set.iter().map(|v| h.transpose().mul_vec(c.ext(), v)).collect();
            let perp = a.orthogonal(&w);
            prop_assert_eq!(ch.hamming_support_of_set(&images), pm.q_set(&perp));
            prop_assert!(pm.source().is_flat(&perp));
            prop_assert!(pm.matroid().is_flat(pm.points_of(&perp)));
        }
    }

    /// Codewords supported inside `U` number `(q^m)^(k - rho(U^perp))`, so
    /// a nonempty `C(V^perp)` makes `V` a flat; likewise for Hamming
    /// supports.
    #[test]
    fn supports_and_flats(seed in any::<u64>()) {
        let c = code(seed, 2, &[1, 2, 3], 3);
        let qm = c.associated_qmatroid();
        let a = c.ambient();
        let big = c.ext().order() as u64;
        for u in a.enumerate_subspaces(None).unwrap() {
            let inside = c.codewords().unwrap().iter().filter(|v| a.leq(&c.rank_support(v), &u)).count() as u64;
            let v = a.orthogonal(&u);
            prop_assert_eq!(inside, big.pow(c.k() as u32 - qm.rank(&v)));
            if c.rank_support_count(&u).unwrap() > 0 {
                prop_assert!(qm.is_flat(&v), "{:?}", v);
            }
        }
        let m = c.associated_matroid().unwrap();
        for s in 0..1u64 << c.n() {
            let inside = c.codewords().unwrap().iter().filter(|v| c.hamming_support(v) & !s == 0).count() as u64;
            let rest = m.full_mask() & !s;
            prop_assert_eq!(inside, big.pow(c.k() as u32 - m.rank(rest)));
            if c.hamming_support_count(s).unwrap() > 0 {
                prop_assert!(m.is_flat(rest));
            }
        }
    }

    #[test]
    fn telescoping_with_random_orders(seed in any::<u64>(), order in any::<u64>()) {
        let qm = small_qmatroid(seed);
        let pm = projectivize(&qm).unwrap();
        let r = pm.verify_telescoping(order, "random").unwrap();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn projectivization_weight_enumerators(seed in any::<u64>()) {
        let qm = small_qmatroid(seed);
        let pm = projectivize(&qm).unwrap();
        let (q, n) = (qm.ambient().q() as usize, qm.n());
        let size = pm.matroid().size();
        for j in 0..=size {
            let lhs = weight_enumerator_matroid(pm.matroid(), j, CharPolyMethod::Flats).unwrap();
            let level = (0..=n).find(|&i| (q.pow(n as u32) - q.pow((n - i) as u32)) / (q - 1) == j);
            match level {
                Some(i) => prop_assert_eq!(lhs, weight_enumerator_q(&qm, i, CharPolyMethod::Flats).unwrap()),
                None => prop_assert!(lhs.is_zero(), "j = {}: {}", j, lhs),
            }
        }
    }

    #[test]
    fn maps_commute_with_projectivization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| -> QMatroid {
            if rng.gen_bool(0.5) {
                QMatroid::uniform(Field::new(2).unwrap(), rng.gen_range(0..=3), 3)
            } else {
                let ext = ExtField::new(&Field::new(2).unwrap(), rng.gen_range(1..=3), None).unwrap();
                random_code(&ext, rng.gen_range(1..=3), 3, rng).associated_qmatroid()
            }
        };
        let m = pick(&mut rng);
        let n = pick(&mut rng);
        let a = Matrix::new(3, 3, (0..9).map(|_| rng.gen_range(0..2)).collect());
        let map = LMap::from_matrix(m.ambient(), n.ambient(), a).unwrap();
        let r = map.check_functor(&m, &n, "random").unwrap();
        prop_assert!(r.passed(), "{}", r);
        let cond = map.strong_conditions(&m, &n).unwrap();
        let strong = map.is_qstrong(&m, &n).unwrap();
        prop_assert_eq!(cond.continuous(), strong);
        if strong {
            prop_assert!(cond.flat_clauses());
            prop_assert!(map.is_qweak(&m, &n).unwrap());
        }
    }
}

/// The four coloop statements around the pivot pair `v = e`, checked over
/// every proper subset `A` of `Q_{v^perp}^{*e}` (sampled when large).
fn check_coloop_statements(qm: &QMatroid, seed: u64) -> Result<usize, String> {
    let pm = projectivize(qm).map_err(|e| e.to_string())?;
    let mat = pm.matroid();
    let (v, e, qstar) = pm.pivot_sets();
    let qmask: Mask = qstar.iter().fold(0, |m, &i| m | 1 << i);
    let qv = qmask | 1 << e;
    let mut subsets: Vec<Mask> = Vec::new();
    if qstar.len() <= 8 {
        for bitsel in 0..(1u64 << qstar.len()) - 1 {
            subsets
                .push(qstar.iter().enumerate().filter(|(j, _)| bitsel >> j & 1 == 1).fold(0, |m, (_, &i)| m | 1 << i));
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let a = qstar.iter().filter(|_| rng.gen_bool(0.5)).fold(0, |m, &i| m | 1 << i);
            if a != qmask {
                subsets.push(a);
            }
        }
    }
    let mut checks = 0;
    for &a in &subsets {
        let na = mat.delete(a).unwrap();
        for w in bits(qmask & !a) {
            let wl = relabel(mat, 1 << w, &na).trailing_zeros() as usize;
            if na.is_coloop(wl) {
                return Err(format!("(a): {} is a coloop after deleting {a:#b}", mat.label(w)));
            }
            checks += 1;
            let naw = na.contract(1 << wl).unwrap();
            for z in bits(qv & !a & !(1 << w)) {
                let zl = relabel(mat, 1 << z, &naw).trailing_zeros() as usize;
                if naw.is_coloop(zl) {
                    return Err(format!("(b): {} is a coloop of P(M) \\ {a:#b} / {}", mat.label(z), mat.label(w)));
                }
                checks += 1;
            }
        }
        let rest: Vec<usize> = bits(qv & !a).collect();
        for (i, &w1) in rest.iter().enumerate() {
            for &w2 in &rest[i + 1..] {
                let pair = relabel(mat, 1 << w1 | 1 << w2, &na);
                if na.contract(pair).unwrap().loops() == 0 {
                    return Err(format!("(c): no loop after contracting {} and {}", mat.label(w1), mat.label(w2)));
                }
                checks += 1;
            }
        }
    }
    let rest = mat.delete(qmask).unwrap();
    let el = rest.index_of(mat.label(e)).unwrap();
    if rest.is_coloop(el) != qm.is_coloop(&pm.points()[v]) {
        return Err("(d): coloop status of e and <v> differ".into());
    }
    Ok(checks + 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn coloop_statements_on_projectivizations(seed in any::<u64>()) {
        let qm = small_qmatroid(seed);
        if let Err(msg) = check_coloop_statements(&qm, seed) {
            prop_assert!(false, "{}", msg);
        }
    }
}

#[test]
fn coloop_statements_on_uniforms() {
    for q in [2, 3] {
        for n in 1..=3 {
            for k in 0..=n {
                let qm = QMatroid::uniform(Field::new(q).unwrap(), k, n);
                check_coloop_statements(&qm, 7).unwrap_or_else(|e| panic!("U({k},{n};{q}): {e}"));
            }
        }
    }
}

/// The join and atom clauses hold for `[[1, 0], [0, 0]]` on `U_{1,2}(2)`
/// although its kernel, a non-loop, makes the map fail to be q-strong.
#[test]
fn flat_clauses_do_not_imply_strong() {
    let f2 = Field::new(2).unwrap();
    let m = QMatroid::uniform(f2.clone(), 1, 2);
    let a = Matrix::from_rows(&[vec![1, 0], vec![0, 0]], 2);
    let map = LMap::from_matrix(m.ambient(), m.ambient(), a).unwrap();
    assert!(!map.is_qstrong(&m, &m).unwrap());
    let cond = map.strong_conditions(&m, &m).unwrap();
    assert!(cond.flat_clauses());
    assert!(!cond.continuous());
    let report = map.check_strong_characterization(&m, &m, "U(1,2)").unwrap();
    assert!(!report.passed());
    assert!(map.check_functor(&m, &m, "U(1,2)").unwrap().passed());
}

#[test]
fn identity_and_zero_maps() {
    let f3 = Field::new(3).unwrap();
    let amb = Ambient::new(f3.clone(), 2);
    for k in 0..=2 {
        let m = QMatroid::uniform(f3.clone(), k, 2);
        let id = LMap::from_matrix(&amb, &amb, Matrix::identity(2)).unwrap();
        assert!(id.is_qstrong(&m, &m).unwrap());
        let zero = LMap::from_matrix(&amb, &amb, Matrix::zeros(2, 2)).unwrap();
        assert!(zero.is_qstrong(&m, &m).unwrap());
        let sharp = zero.sigma_sharp(&m, &m, &amb.full()).unwrap();
        assert_eq!(sharp, m.closure(&amb.zero()));
    }
}
