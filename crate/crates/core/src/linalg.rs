//! Exact linear algebra over the rationals: sparse echelon forms with
//! provenance tags (for quotients and kernels), dense rank, and seeded
//! generic points.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rat::Rat;

/// Sparse vector indexed by an ordered key.
pub type SparseVec<K> = BTreeMap<K, Rat>;

/// Combination of input labels.
pub type Tag = BTreeMap<usize, Rat>;

fn axpy<K: Ord + Clone>(y: &mut BTreeMap<K, Rat>, a: &Rat, x: &BTreeMap<K, Rat>) {
    for (k, v) in x {
        let slot = y.entry(k.clone()).or_insert_with(Rat::zero);
        *slot += &(a * v);
        if slot.is_zero() {
            y.remove(k);
        }
    }
}

/// Row echelon form over sparse vectors. Each row remembers which
/// combination of inserted inputs it came from, so membership, quotient
/// coordinates and kernels all fall out of the same reduction.
///
/// Pivots are the largest key of each row.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, Tag)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows. Returns `(rem, t)` with
    /// `v = rem + Σ a_r row_r` and `t = Σ a_r tag_r`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, Tag) {
        let mut rem = v.clone();
        let mut tag = Tag::new();
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => rem.iter().next_back(),
                Some(b) => rem.range(..b.clone()).next_back(),
            };
            let Some((k, c)) = next else { break };
            let (k, c) = (k.clone(), c.clone());
            if let Some((row, rtag)) = self.rows.get(&k) {
                // row is normalized: coefficient 1 at its pivot k
                let a = c;
                axpy(&mut rem, &-&a, row);
                axpy(&mut tag, &a, rtag);
            }
            bound = Some(k);
        }
        (rem, tag)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Insert `v` carrying `tag`. Returns `None` if `v` was independent of
    /// the current rows, otherwise `Some(tag - t)`, a combination of input
    /// tags whose vectors sum to zero.
    pub fn insert(&mut self, v: &SparseVec<K>, tag: Tag) -> Option<Tag> {
        let (rem, t) = self.reduce(v);
        let mut new_tag = tag;
        axpy(&mut new_tag, &-Rat::one(), &t);
        let Some((pk, pc)) = rem.iter().next_back() else {
            return Some(new_tag);
        };
        let pk = pk.clone();
        let inv = pc.recip();
        let row: SparseVec<K> = rem.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let tag: Tag = new_tag.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.rows.insert(pk, (row, tag));
        None
    }
}

pub fn unit_tag(i: usize) -> Tag {
    let mut t = Tag::new();
    t.insert(i, Rat::one());
    t
}

/// Kernel basis of the linear map sending input `i` to `images[i]`.
pub fn kernel<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<Tag> {
    let mut ech = Echelon::new();
    images
        .iter()
        .enumerate()
        .filter_map(|(i, v)| ech.insert(v, unit_tag(i)))
        .collect()
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<K: Ord + Clone>(vs: &[SparseVec<K>]) -> usize {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v, Tag::new());
    }
    ech.rank()
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for k in c..cols {
                let d = &f * &a[r][k];
                a[i][k] -= &d;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `count` distinct rationals drawn deterministically from `seed`.
///
/// Values are `p/q` with `|p| < 1000` and `1 ≤ q ≤ 7`; the draw is
/// repeated until all values are pairwise distinct and nonzero.
pub fn generic_point(count: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rat> = Vec::with_capacity(count);
    while out.len() < count {
        let p: i64 = rng.gen_range(-999..=999);
        let q: i64 = rng.gen_range(1..=7);
        let x = Rat::new(p, q);
        if !x.is_zero() && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(u32, i64)]) -> SparseVec<u32> {
        pairs.iter().map(|&(k, c)| (k, Rat::from_int(c))).collect()
    }

    #[test]
    fn kernel_of_dependent_family() {
        let imgs = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)]), sv(&[(0, 2), (1, 5)])];
        let ker = kernel(&imgs);
        assert_eq!(ker.len(), 1);
        // check the relation
        let mut acc = SparseVec::new();
        for (i, c) in &ker[0] {
            axpy(&mut acc, c, &imgs[*i]);
        }
        assert!(acc.is_empty());
    }

    #[test]
    fn reduce_tracks_combination() {
        let mut e = Echelon::new();
        e.insert(&sv(&[(0, 1), (2, 1)]), unit_tag(0));
        e.insert(&sv(&[(1, 1)]), unit_tag(1));
        let (rem, t) = e.reduce(&sv(&[(0, 1), (1, 3), (2, 1)]));
        assert!(rem.is_empty());
        assert_eq!(t, [(0, Rat::one()), (1, Rat::from_int(3))].into_iter().collect());
    }

    #[test]
    fn dense_rank() {
        let m = vec![
            vec![Rat::from_int(1), Rat::from_int(2)],
            vec![Rat::from_int(2), Rat::from_int(4)],
        ];
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn generic_point_is_deterministic_and_distinct() {
        let a = generic_point(6, 7);
        assert_eq!(a, generic_point(6, 7));
        for i in 0..6 {
            for j in 0..i {
                assert_ne!(a[i], a[j]);
            }
        }
    }
}
