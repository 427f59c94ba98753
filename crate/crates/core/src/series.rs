//! Truncated series in `u⁻¹` and differential operators in `∂ = d/du`
//! whose coefficients are such series.
//!
//! The coefficient ring may be noncommutative; products always keep the
//! left factor on the left. `u` itself commutes with everything.

use std::fmt;

use crate::combinat::binomial;
use crate::error::{arg, Result};
use crate::poly::MPoly;
use crate::rat::Rat;

/// Coefficient ring for series and operators.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Product with `self` on the left.
    fn mul(&self, o: &Self) -> Self;
    fn scale_int(&self, k: i64) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_int(&self, k: i64) -> Self {
        self * &Rat::from_int(k)
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rat::from_int(k))
    }
}

/// `Σ_{j=0}^{jmax} c_j u^{-j}`, exact through order `jmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct UInvSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> UInvSeries<C> {
    pub fn zero(jmax: usize) -> Self {
        UInvSeries {
            coeffs: vec![C::zero(); jmax + 1],
        }
    }

    pub fn constant(c: C, jmax: usize) -> Self {
        Self::monomial(c, 0, jmax)
    }

    /// `c u^{-j}` (zero if `j > jmax`).
    pub fn monomial(c: C, j: usize, jmax: usize) -> Self {
        let mut s = Self::zero(jmax);
        if j <= jmax {
            s.coeffs[j] = c;
        }
        s
    }

    /// Build from leading coefficients; entries past `jmax` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<C>, jmax: usize) -> Self {
        coeffs.resize(jmax + 1, C::zero());
        UInvSeries { coeffs }
    }

    pub fn jmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.jmax(), o.jmax());
        UInvSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        UInvSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn map_into<D: Ring>(&self, f: impl Fn(&C) -> D) -> UInvSeries<D> {
        UInvSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated Cauchy product, `self` on the left.
    pub fn mul(&self, o: &Self) -> Self {
        let jmax = self.jmax().min(o.jmax());
        let mut out = Self::zero(jmax);
        for (a, ca) in self.coeffs.iter().enumerate().take(jmax + 1) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in o.coeffs.iter().enumerate().take(jmax + 1 - a) {
                if cb.is_zero() {
                    continue;
                }
                out.coeffs[a + b] = out.coeffs[a + b].add(&ca.mul(cb));
            }
        }
        out
    }

    /// `d/du`: `c u^{-j} ↦ -j c u^{-j-1}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.jmax());
        for j in 1..=self.jmax() {
            out.coeffs[j] = self.coeffs[j - 1].scale_int(-(j as i64 - 1));
        }
        out
    }

    /// Keep orders `0..=jmax'` only.
    pub fn restrict(&self, jmax: usize) -> Self {
        assert!(jmax <= self.jmax(), "cannot extend a truncated series");
        UInvSeries {
            coeffs: self.coeffs[..=jmax].to_vec(),
        }
    }

    /// Inverse of a series with invertible constant term, given that
    /// inverse. Only valid for commutative coefficient rings.
    pub fn inverse_with(&self, c0_inv: &C) -> Self {
        let jmax = self.jmax();
        // 1/(c0 (1 + s)) = c0^{-1} Σ (-s)^k
        let normed = self.map(|c| c.mul(c0_inv));
        let mut minus_tail = normed.neg();
        minus_tail.coeffs[0] = C::zero();
        let mut acc = Self::constant(C::one(), jmax);
        let mut power = Self::constant(C::one(), jmax);
        for _ in 0..jmax {
            power = power.mul(&minus_tail);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        acc.map(|c| c.mul(c0_inv))
    }
}

/// `Σ_k a_k(u) ∂^k` with `a_k` truncated `u⁻¹`-series.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOpSeries<C> {
    jmax: usize,
    coeffs: Vec<UInvSeries<C>>,
}

impl<C: Ring> DiffOpSeries<C> {
    pub fn zero(jmax: usize) -> Self {
        DiffOpSeries {
            jmax,
            coeffs: Vec::new(),
        }
    }

    /// Multiplication operator by a series.
    pub fn scalar(s: UInvSeries<C>) -> Self {
        let jmax = s.jmax();
        DiffOpSeries {
            jmax,
            coeffs: vec![s],
        }
        .trimmed()
    }

    /// `∂^k`.
    pub fn d_power(k: usize, jmax: usize) -> Self {
        let mut coeffs = vec![UInvSeries::zero(jmax); k + 1];
        coeffs[k] = UInvSeries::constant(C::one(), jmax);
        DiffOpSeries { jmax, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<UInvSeries<C>>, jmax: usize) -> Self {
        assert!(coeffs.iter().all(|c| c.jmax() == jmax));
        DiffOpSeries { jmax, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(UInvSeries::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    /// Highest `∂`-power with a nonzero coefficient (`None` for zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `∂^k`.
    pub fn coeff(&self, k: usize) -> UInvSeries<C> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| UInvSeries::zero(self.jmax))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.jmax, o.jmax, "truncation mismatch");
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        DiffOpSeries {
            jmax: self.jmax,
            coeffs,
        }
        .trimmed()
    }

    pub fn neg(&self) -> Self {
        DiffOpSeries {
            jmax: self.jmax,
            coeffs: self.coeffs.iter().map(UInvSeries::neg).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        DiffOpSeries {
            jmax: self.jmax,
            coeffs: self.coeffs.iter().map(|s| s.map(&f)).collect(),
        }
        .trimmed()
    }

    /// Composition `self ∘ o`, using `∂ ∘ f = f ∘ ∂ + f'`:
    /// `(a ∂^k)(b ∂^m) = Σ_l C(k,l) a b^{(l)} ∂^{k+m-l}`.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.jmax, o.jmax, "truncation mismatch");
        let jmax = self.jmax;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero(jmax);
        }
        let top = self.coeffs.len() - 1 + o.coeffs.len() - 1;
        let mut out = vec![UInvSeries::zero(jmax); top + 1];
        // derivatives of the right factor's coefficients, cached per order
        let max_k = self.coeffs.len() - 1;
        let mut derivs: Vec<Vec<UInvSeries<C>>> = o.coeffs.iter().map(|b| vec![b.clone()]).collect();
        for d in derivs.iter_mut() {
            for l in 1..=max_k {
                let next = d[l - 1].derivative();
                d.push(next);
            }
        }
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (m, dm) in derivs.iter().enumerate() {
                for (l, bl) in dm.iter().enumerate().take(k + 1) {
                    if bl.is_zero() {
                        continue;
                    }
                    let c = binomial(k, l) as i64;
                    let term = a.mul(bl).map(|x| x.scale_int(c));
                    let slot = k + m - l;
                    out[slot] = out[slot].add(&term);
                }
            }
        }
        DiffOpSeries { jmax, coeffs: out }.trimmed()
    }

    pub fn restrict(&self, jmax: usize) -> Self {
        DiffOpSeries {
            jmax,
            coeffs: self.coeffs.iter().map(|s| s.restrict(jmax)).collect(),
        }
        .trimmed()
    }
}

/// Row determinant `Σ_σ sgn(σ) M_{1σ(1)} ∘ ⋯ ∘ M_{Nσ(N)}` with factors
/// composed in row order.
pub fn rdet<C: Ring>(m: &[Vec<DiffOpSeries<C>>]) -> Result<DiffOpSeries<C>> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) {
        return arg("rdet needs a nonempty square matrix");
    }
    let jmax = m[0][0].jmax();
    if m.iter().flatten().any(|e| e.jmax() != jmax) {
        return arg("rdet entries have mismatched truncation orders");
    }
    // Expand row by row from the bottom so every partial product is
    // shared across permutations with the same tail.
    fn expand<C: Ring>(
        m: &[Vec<DiffOpSeries<C>>],
        row: usize,
        used: &mut Vec<bool>,
        jmax: usize,
    ) -> DiffOpSeries<C> {
        let n = m.len();
        if row == n {
            return DiffOpSeries::d_power(0, jmax);
        }
        let mut acc = DiffOpSeries::zero(jmax);
        // sign of the permutation contribution: number of unused columns
        // to the left of the chosen one
        let mut free_before = 0i64;
        for col in 0..n {
            if used[col] {
                continue;
            }
            let entry = &m[row][col];
            if entry.order().is_some() {
                used[col] = true;
                let tail = expand(m, row + 1, used, jmax);
                used[col] = false;
                let mut term = entry.compose(&tail);
                if free_before % 2 == 1 {
                    term = term.neg();
                }
                acc = acc.add(&term);
            }
            free_before += 1;
        }
        acc
    }
    let mut used = vec![false; n];
    Ok(expand(m, 0, &mut used, jmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn k(i: u8) -> MPoly {
        MPoly::var(Var::K(i))
    }

    fn scal(p: MPoly, j: usize, jmax: usize) -> DiffOpSeries<MPoly> {
        DiffOpSeries::scalar(UInvSeries::monomial(p, j, jmax))
    }

    #[test]
    fn commuting_rdet_is_determinant() {
        let jmax = 2;
        let m = vec![
            vec![scal(k(1), 0, jmax), scal(k(2), 0, jmax)],
            vec![scal(k(3), 0, jmax), scal(k(4), 0, jmax)],
        ];
        let d = rdet(&m).unwrap();
        let expect = &(&k(1) * &k(4)) - &(&k(2) * &k(3));
        assert_eq!(d, scal(expect, 0, jmax));
    }

    #[test]
    fn rdet_with_derivative_entries() {
        // [[∂, u^-1], [1, ∂]] -> ∂² - u^-1
        let jmax = 3;
        let d = DiffOpSeries::<MPoly>::d_power(1, jmax);
        let m = vec![
            vec![d.clone(), scal(MPoly::one(), 1, jmax)],
            vec![scal(MPoly::one(), 0, jmax), d],
        ];
        let got = rdet(&m).unwrap();
        let expect = DiffOpSeries::d_power(2, jmax).sub(&scal(MPoly::one(), 1, jmax));
        assert_eq!(got, expect);
    }

    #[test]
    fn rdet_of_diagonal_first_order_factors() {
        // (∂ − f)(∂ − g) = ∂² − (f + g)∂ + fg − g′
        let jmax = 4;
        let f = UInvSeries::from_coeffs(vec![k(1), k(2)], jmax);
        let g = UInvSeries::from_coeffs(vec![k(3), MPoly::zero(), k(4)], jmax);
        let d = DiffOpSeries::<MPoly>::d_power(1, jmax);
        let m = vec![
            vec![d.sub(&DiffOpSeries::scalar(f.clone())), DiffOpSeries::zero(jmax)],
            vec![DiffOpSeries::zero(jmax), d.sub(&DiffOpSeries::scalar(g.clone()))],
        ];
        let got = rdet(&m).unwrap();
        let expect = DiffOpSeries::from_coeffs(
            vec![f.mul(&g).sub(&g.derivative()), f.add(&g).neg(), UInvSeries::constant(MPoly::one(), jmax)],
            jmax,
        );
        assert_eq!(got, expect);
        // u^-3 in fg − g′: K_2 K_4 from fg, 2K_4 from −g′
        assert_eq!(got.coeff(0).coeff(3), &(&(&k(2) * &k(4)) + &k(4).scale(&Rat::from_int(2))));
    }

    #[test]
    fn rdet_rejects_mismatched_truncation() {
        let m = vec![vec![DiffOpSeries::<MPoly>::d_power(1, 2)], ];
        assert!(rdet(&m).is_ok());
        let m = vec![
            vec![DiffOpSeries::<MPoly>::d_power(1, 2), DiffOpSeries::d_power(0, 3)],
            vec![DiffOpSeries::d_power(0, 2), DiffOpSeries::d_power(1, 2)],
        ];
        assert!(rdet(&m).is_err());
    }

    #[test]
    fn series_derivative() {
        let s = UInvSeries::from_coeffs(vec![MPoly::int(5), MPoly::int(1), MPoly::int(1)], 3);
        let d = s.derivative();
        assert_eq!(d.coeffs(), &[MPoly::zero(), MPoly::zero(), MPoly::int(-1), MPoly::int(-2)]);
    }

    #[test]
    fn inverse_of_one_plus_u_inv() {
        let s = UInvSeries::from_coeffs(vec![Rat::one(), Rat::one()], 4);
        let inv = s.inverse_with(&Rat::one());
        let expect: Vec<Rat> = (0..5).map(|j| Rat::from_int(if j % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(inv.coeffs(), &expect[..]);
        assert_eq!(s.mul(&inv), UInvSeries::constant(Rat::one(), 4));
    }
}
