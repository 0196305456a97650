//! Finite lattices of flats given as explicit element lists, shared by
//! matroids (flats are bitmasks) and q-matroids (flats are subspaces).

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

/// A finite lattice stored with its full order relation.
///
/// Elements are sorted by height and then by their own order, so the bottom
/// is index `0` and the top is the last index.
#[derive(Clone)]
pub struct FlatLattice<T> {
    elems: Vec<T>,
    index: HashMap<T, usize>,
    heights: Vec<u32>,
    /// `leq[i][j]` iff element `i` lies below element `j`.
    leq: Vec<Vec<bool>>,
    upper_covers: Vec<Vec<usize>>,
    mobius_bottom: Vec<i64>,
}

impl<T: fmt::Debug> fmt::Debug for FlatLattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlatLattice").field("elems", &self.elems).field("heights", &self.heights).finish()
    }
}

impl<T: Clone + Eq + Hash + Ord> FlatLattice<T> {
    /// Builds the lattice from a list of elements and a partial order. The
    /// caller is responsible for the list being a lattice with a bottom.
    pub fn from_elements(elems: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> FlatLattice<T> {
        let n = elems.len();
        let rel: Vec<Vec<bool>> = elems.iter().map(|a| elems.iter().map(|b| leq(a, b)).collect()).collect();
        // Number of elements below is a linear extension.
        let below: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| rel[i][j]).count()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| below[i]);
        let mut heights = vec![0u32; n];
        for (pos, &j) in order.iter().enumerate() {
            heights[j] = order[..pos].iter().filter(|&&i| rel[i][j]).map(|&i| heights[i] + 1).max().unwrap_or(0);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| heights[a].cmp(&heights[b]).then_with(|| elems[a].cmp(&elems[b])));
        let elems: Vec<T> = perm.iter().map(|&i| elems[i].clone()).collect();
        let heights: Vec<u32> = perm.iter().map(|&i| heights[i]).collect();
        let leq: Vec<Vec<bool>> = perm.iter().map(|&a| perm.iter().map(|&b| rel[a][b]).collect()).collect();

        let upper_covers = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| i != j && leq[i][j])
                    .filter(|&j| !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]))
                    .collect()
            })
            .collect();

        let mut mobius_bottom = vec![0i64; n];
        if n > 0 {
            for j in 0..n {
                mobius_bottom[j] =
                    if j == 0 { 1 } else { -(0..j).filter(|&i| leq[i][j]).map(|i| mobius_bottom[i]).sum::<i64>() };
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        FlatLattice { elems, index, heights, leq, upper_covers, mobius_bottom }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &T {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &T) -> bool {
        self.index.contains_key(e)
    }

    pub fn height(&self, i: usize) -> u32 {
        self.heights[i]
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn atoms(&self) -> &[usize] {
        self.upper_covers(self.bottom())
    }

    /// `mu(bottom, e_i)`.
    pub fn mobius_from_bottom(&self, i: usize) -> i64 {
        self.mobius_bottom[i]
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq[k][i] && self.leq[k][j]).collect();
        lower.iter().copied().find(|&k| lower.iter().all(|&l| self.leq[l][k]))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&k| self.leq[i][k] && self.leq[j][k]).collect();
        upper.iter().copied().find(|&k| upper.iter().all(|&u| self.leq[k][u]))
    }

    /// Smallest element above every listed index; the top for an empty list.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().try_fold(self.bottom(), |acc, i| self.join(acc, i))
    }
}

/// Checks that `map` (indices of `a` to indices of `b`) is a lattice
/// isomorphism: bijective, order and cover preserving in both directions,
/// and compatible with meets, joins and heights. Returns a description of
/// the first failure.
pub fn check_isomorphism<T, U>(a: &FlatLattice<T>, b: &FlatLattice<U>, map: &[usize]) -> Result<(), String>
where
    T: Clone + Eq + Hash + Ord + fmt::Debug,
    U: Clone + Eq + Hash + Ord + fmt::Debug,
{
    if a.len() != b.len() || map.len() != a.len() {
        return Err(format!("lattices have {} and {} elements", a.len(), b.len()));
    }
    let mut hit = vec![false; b.len()];
    for &j in map {
        if j >= b.len() || std::mem::replace(&mut hit[j], true) {
            return Err("map is not a bijection".into());
        }
    }
    for i in 0..a.len() {
        if a.height(i) != b.height(map[i]) {
            return Err(format!("height differs at {:?}", a.get(i)));
        }
        for j in 0..a.len() {
            if a.leq(i, j) != b.leq(map[i], map[j]) {
                return Err(format!("order differs at {:?}, {:?}", a.get(i), a.get(j)));
            }
            let cover_a = a.upper_covers(i).contains(&j);
            let cover_b = b.upper_covers(map[i]).contains(&map[j]);
            if cover_a != cover_b {
                return Err(format!("cover relation differs at {:?}, {:?}", a.get(i), a.get(j)));
            }
            if a.meet(i, j).map(|k| map[k]) != b.meet(map[i], map[j]) {
                return Err(format!("meet differs at {:?}, {:?}", a.get(i), a.get(j)));
            }
            if a.join(i, j).map(|k| map[k]) != b.join(map[i], map[j]) {
                return Err(format!("join differs at {:?}, {:?}", a.get(i), a.get(j)));
            }
        }
    }
    Ok(())
}
