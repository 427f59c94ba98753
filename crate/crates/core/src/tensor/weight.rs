use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::multinomial;
use crate::error::{arg, Result};

/// A weight `λ = (λ_1, …, λ_N)` with nonnegative entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(Vec<usize>);

impl Weight {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return arg("a weight needs at least one component");
        }
        Ok(Weight(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|λ|`.
    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of components `N`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i`, 1-based.
    pub fn part(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// `d_λ = n! / ∏ λ_i!`.
    pub fn dim(&self) -> usize {
        multinomial(&self.0) as usize
    }

    /// `λ + ε_i − ε_j` (1-based), or `None` if a component goes negative.
    pub fn shifted(&self, i: usize, j: usize) -> Option<Weight> {
        let mut p = self.0.clone();
        if i == j {
            return Some(self.clone());
        }
        if p[j - 1] == 0 {
            return None;
        }
        p[j - 1] -= 1;
        p[i - 1] += 1;
        Some(Weight(p))
    }

    /// `Σ_{i<j} λ_i λ_j`, the dimension of the flag variety.
    pub fn flag_dim(&self) -> usize {
        let mut s = 0;
        for j in 0..self.0.len() {
            for i in 0..j {
                s += self.0[i] * self.0[j];
            }
        }
        s
    }

    /// `Σ_i λ_i(λ_i − 1)/2`, the degree of the block Vandermonde product.
    pub fn block_vandermonde_degree(&self) -> usize {
        self.0.iter().map(|&l| l * l.saturating_sub(1) / 2).sum()
    }

    /// All weights with `N` components summing to `n`, lexicographically
    /// decreasing.
    pub fn all(n_big: usize, n: usize) -> Vec<Weight> {
        crate::combinat::compositions(n, n_big)
            .into_iter()
            .map(Weight)
            .collect()
    }

    /// Dominant weights with `N` components summing to `n`.
    pub fn dominant(n_big: usize, n: usize) -> Vec<Weight> {
        Self::all(n_big, n)
            .into_iter()
            .filter(Weight::is_dominant)
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `I = (I_1, …, I_N)` stored as the color of each tensor slot: slot `s`
/// (1-based) lies in block `colors[s-1] + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition(Vec<u8>);

impl Decomposition {
    pub fn from_colors(colors: Vec<u8>) -> Self {
        Decomposition(colors)
    }

    /// Build from 1-based blocks.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut colors = vec![u8::MAX; n];
        for (j, b) in blocks.iter().enumerate() {
            for &s in b {
                if s == 0 || s > n || colors[s - 1] != u8::MAX {
                    return arg(format!("blocks do not partition 1..={n}"));
                }
                colors[s - 1] = j as u8;
            }
        }
        Ok(Decomposition(colors))
    }

    pub fn colors(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Block `I_j` (1-based `j`), sorted 1-based slots.
    pub fn block(&self, j: usize) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == j - 1)
            .map(|(s, _)| s + 1)
            .collect()
    }

    pub fn blocks(&self, n_big: usize) -> Vec<Vec<usize>> {
        (1..=n_big).map(|j| self.block(j)).collect()
    }

    pub fn weight(&self, n_big: usize) -> Weight {
        let mut p = vec![0; n_big];
        for &c in &self.0 {
            p[c as usize] += 1;
        }
        Weight(p)
    }

    /// The standard decomposition: consecutive blocks of sizes `λ_1, λ_2, …`.
    pub fn standard(lambda: &Weight) -> Self {
        let mut colors = Vec::with_capacity(lambda.n());
        for (j, &l) in lambda.parts().iter().enumerate() {
            colors.extend(std::iter::repeat(j as u8).take(l));
        }
        Decomposition(colors)
    }

    /// Permutation `π` (0-based one-line notation) sending the `k`-th slot of
    /// each standard block to the `k`-th smallest slot of the same block of
    /// `self`.
    pub fn coset_perm(&self, n_big: usize) -> Vec<usize> {
        let lambda = self.weight(n_big);
        let std = Decomposition::standard(&lambda);
        let mut perm = vec![0; self.n()];
        for j in 1..=n_big {
            for (a, b) in std.block(j).into_iter().zip(self.block(j)) {
                perm[a - 1] = b - 1;
            }
        }
        perm
    }

    /// Slot-pairs `(b, a)` of `R(z_{I_1}|…|z_{I_N}) = ∏_{i<j} ∏ (z_b − z_a)`.
    pub fn resultant_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n() {
            for b in 0..self.n() {
                if self.0[a] < self.0[b] {
                    out.push((b + 1, a + 1));
                }
            }
        }
        out
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n_big = self.0.iter().copied().max().map_or(0, |m| m as usize + 1);
        let blocks: Vec<String> = (1..=n_big)
            .map(|j| {
                let b: Vec<String> = self.block(j).iter().map(usize::to_string).collect();
                format!("{{{}}}", b.join(","))
            })
            .collect();
        write!(f, "({})", blocks.join("|"))
    }
}

/// All `I ∈ I_λ`, in lexicographic order of slot colors.
pub fn enumerate_decompositions(lambda: &Weight) -> Vec<Decomposition> {
    fn rec(rem: &mut Vec<usize>, cur: &mut Vec<u8>, n: usize, out: &mut Vec<Decomposition>) {
        if cur.len() == n {
            out.push(Decomposition(cur.clone()));
            return;
        }
        for c in 0..rem.len() {
            if rem[c] > 0 {
                rem[c] -= 1;
                cur.push(c as u8);
                rec(rem, cur, n, out);
                cur.pop();
                rem[c] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut rem = lambda.parts().to_vec();
    rec(&mut rem, &mut Vec::new(), lambda.n(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[usize]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    #[test]
    fn decomposition_counts() {
        assert_eq!(enumerate_decompositions(&w(&[2, 1])).len(), 3);
        assert_eq!(enumerate_decompositions(&w(&[4])).len(), 1);
        assert_eq!(enumerate_decompositions(&w(&[1, 1, 1])).len(), 6);
        assert_eq!(enumerate_decompositions(&w(&[2, 0, 2])).len(), 6);
        for lam in Weight::all(3, 4) {
            assert_eq!(enumerate_decompositions(&lam).len(), lam.dim());
        }
    }

    #[test]
    fn coset_perm_maps_standard_to_target() {
        let lam = w(&[2, 1]);
        for i in enumerate_decompositions(&lam) {
            let p = i.coset_perm(2);
            let std = Decomposition::standard(&lam);
            let mut colors = vec![0u8; 3];
            for k in 0..3 {
                colors[p[k]] = std.colors()[k];
            }
            assert_eq!(Decomposition::from_colors(colors), i);
        }
    }

    #[test]
    fn shifts_and_blocks() {
        assert_eq!(w(&[1, 1]).shifted(1, 2), Some(w(&[2, 0])));
        assert_eq!(w(&[2, 0]).shifted(1, 2), None);
        let d = Decomposition::from_blocks(&[vec![2], vec![1, 3]]).unwrap();
        assert_eq!(d.block(2), vec![1, 3]);
        assert_eq!(d.to_string(), "({2}|{1,3})");
        assert!(Decomposition::from_blocks(&[vec![1], vec![1]]).is_err());
    }
}
