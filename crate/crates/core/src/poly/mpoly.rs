//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under the
//! graded-lexicographic order, so the largest key is the leading term and
//! two polynomials are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::var::Var;
use crate::rat::Rat;

/// Product of variable powers, stored as `(var, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex with smaller
    /// `Var` values as the more significant variables.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                return if a.0 < b.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Rat::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(Monomial::var(v), Rat::one())
    }

    pub fn z(s: usize) -> Self {
        MPoly::var(Var::Z(s as u8))
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, other: &MPoly, c: &Rat, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        for (n, d) in &other.terms {
            self.add_term(n.mul(m), &(d * c));
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Plain division by the leading term; for a single divisor this finds
    /// the quotient whenever one exists.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (lm, lc) = d.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        if d.terms.len() == 1 {
            let mut q = MPoly::zero();
            for (m, c) in &self.terms {
                q.terms.insert(m.div(&lm)?, c / &lc);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem.add_scaled(d, &-&qc, &qm);
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Replace every variable `v` for which `f(v)` is `Some(p)` by `p`.
    pub fn substitute<F>(&self, mut f: F) -> MPoly
    where
        F: FnMut(Var) -> Option<MPoly>,
    {
        let mut images: HashMap<Var, Option<MPoly>> = HashMap::new();
        let mut powers: HashMap<(Var, u32), MPoly> = HashMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = MPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let img = images.entry(v).or_insert_with(|| f(v)).clone();
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pw;
                    }
                }
            }
            let km = Monomial::from_pairs(kept);
            out.add_assign_ref(&acc.mul_monomial(&km));
        }
        out
    }

    /// Partial evaluation: variables with `f(v) = Some(x)` are set to `x`.
    pub fn eval<F>(&self, mut f: F) -> MPoly
    where
        F: FnMut(Var) -> Option<Rat>,
    {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.pairs() {
                match f(v) {
                    Some(x) => coef *= &x.pow(e),
                    None => kept.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(kept), &coef);
        }
        out
    }

    /// Rename variables through `f`; `f` need not be injective.
    pub fn rename<F>(&self, mut f: F) -> MPoly
    where
        F: FnMut(Var) -> Var,
    {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e))), c);
        }
        out
    }

    /// Permute the `z` variables: `z_s ↦ z_{perm[s-1]}` (1-based images).
    pub fn permute_z(&self, perm: &[usize]) -> MPoly {
        self.rename(|v| match v {
            Var::Z(s) => Var::Z(perm[s as usize - 1] as u8),
            other => other,
        })
    }

    /// Degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest absolute value of a coefficient (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> Rat {
        self.terms
            .values()
            .map(Rat::abs)
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_scaled(rhs, c, m);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for MPoly {
    fn product<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::one(), |a, b| &a * &b)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}
