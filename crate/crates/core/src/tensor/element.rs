use std::collections::BTreeMap;
use std::fmt;

use super::weight::{Decomposition, Weight};
use crate::combinat::{factorial, perm_sign, permutations};
use crate::error::{Error, Result};
use crate::poly::symmetric::vandermonde;
use crate::poly::{MPoly, Monomial, Var};
use crate::rat::Rat;

/// An element `Σ_I v_I ⊗ x_I(z)` of `𝕍 = V^{⊗n} ⊗ ℂ[z]` for `V = ℂ^N`.
///
/// Coefficients may also involve other variables (e.g. `K`), which the
/// action treats as scalars.
#[derive(Clone, PartialEq)]
pub struct VElement {
    n: usize,
    n_big: usize,
    terms: BTreeMap<Decomposition, MPoly>,
}

impl VElement {
    pub fn zero(n: usize, n_big: usize) -> Self {
        VElement {
            n,
            n_big,
            terms: BTreeMap::new(),
        }
    }

    /// `v_I ⊗ p`.
    pub fn basis(i: &Decomposition, n_big: usize, p: MPoly) -> Self {
        let mut x = Self::zero(i.n(), n_big);
        x.add_term(i.clone(), &p);
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_big(&self) -> usize {
        self.n_big
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Decomposition, &MPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: &Decomposition) -> MPoly {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: Decomposition, p: &MPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(i.clone()).or_default();
        slot.add_assign_ref(p);
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    /// The common weight of all terms, if there is one.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.keys().map(|i| i.weight(self.n_big));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn add(&self, o: &VElement) -> VElement {
        let mut out = self.clone();
        for (i, p) in &o.terms {
            out.add_term(i.clone(), p);
        }
        out
    }

    pub fn sub(&self, o: &VElement) -> VElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> VElement {
        self.map_coeffs(|p| -p)
    }

    /// Multiply every coefficient by `p` (the `ℂ[z]`-module structure).
    pub fn mul_poly(&self, p: &MPoly) -> VElement {
        self.map_coeffs(|c| c * p)
    }

    pub fn scale(&self, c: &Rat) -> VElement {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> VElement {
        let mut out = Self::zero(self.n, self.n_big);
        for (i, p) in &self.terms {
            out.add_term(i.clone(), &f(p));
        }
        out
    }

    /// Action of `e_{ij} ⊗ t^r` (1-based `i, j`).
    pub fn act_generator(&self, i: usize, j: usize, r: u32) -> VElement {
        let mut out = Self::zero(self.n, self.n_big);
        let (ci, cj) = ((i - 1) as u8, (j - 1) as u8);
        for (dec, p) in &self.terms {
            for s in 0..self.n {
                if dec.colors()[s] != cj {
                    continue;
                }
                let mut colors = dec.colors().to_vec();
                colors[s] = ci;
                let zr = if r == 0 {
                    p.clone()
                } else {
                    p.mul_monomial(&Monomial::from_pairs([(Var::Z(s as u8 + 1), r)]))
                };
                out.add_term(Decomposition::from_colors(colors), &zr);
            }
        }
        out
    }

    /// Symmetric-group action: the factor in slot `k` moves to slot `σ(k)`
    /// and `z_k ↦ z_{σ(k)}` (0-based one-line `sigma`).
    pub fn sn_act(&self, sigma: &[usize]) -> VElement {
        let images: Vec<usize> = sigma.iter().map(|&s| s + 1).collect();
        let mut out = Self::zero(self.n, self.n_big);
        for (dec, p) in &self.terms {
            let mut colors = vec![0u8; self.n];
            for (k, &c) in dec.colors().iter().enumerate() {
                colors[sigma[k]] = c;
            }
            out.add_term(Decomposition::from_colors(colors), &p.permute_z(&images));
        }
        out
    }

    /// Evaluate coefficient variables through `f` (partial evaluation).
    pub fn eval(&self, f: impl Fn(Var) -> Option<Rat> + Copy) -> VElement {
        self.map_coeffs(|p| p.eval(f))
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, p)| format!("v{i}⊗({p})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Functional form of [`VElement::act_generator`].
pub fn act_generator(i: usize, j: usize, r: u32, x: &VElement) -> VElement {
    x.act_generator(i, j, r)
}

/// Functional form of [`VElement::sn_act`].
pub fn sn_act(sigma: &[usize], x: &VElement) -> VElement {
    x.sn_act(sigma)
}

/// Average over `S_n`, with signs when `sign < 0`.
pub fn project_symmetric(x: &VElement, sign: i64) -> VElement {
    let mut acc = VElement::zero(x.n, x.n_big);
    for p in permutations(x.n) {
        let s = if sign < 0 { perm_sign(&p) } else { 1 };
        let y = x.sn_act(&p);
        acc = if s > 0 { acc.add(&y) } else { acc.sub(&y) };
    }
    acc.scale(&Rat::new(1, factorial(x.n) as i64))
}

/// `D = ∏_{i<j} (z_j − z_i)`.
pub fn global_denominator(n: usize) -> MPoly {
    let vars: Vec<Var> = (1..=n).map(|s| Var::Z(s as u8)).collect();
    vandermonde(&vars)
}

/// `x / D` with `D` the full Vandermonde product.
#[derive(Clone, PartialEq)]
pub struct FracVElement {
    pub num: VElement,
}

impl FracVElement {
    pub fn new(num: VElement) -> Self {
        FracVElement { num }
    }

    /// Degree shift contributed by `1/D`.
    pub fn degree_offset(&self) -> i64 {
        -((self.num.n * (self.num.n.saturating_sub(1)) / 2) as i64)
    }

    pub fn act_generator(&self, i: usize, j: usize, r: u32) -> FracVElement {
        FracVElement::new(self.num.act_generator(i, j, r))
    }

    pub fn add(&self, o: &FracVElement) -> FracVElement {
        FracVElement::new(self.num.add(&o.num))
    }

    pub fn sub(&self, o: &FracVElement) -> FracVElement {
        FracVElement::new(self.num.sub(&o.num))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for FracVElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / D", self.num)
    }
}

impl fmt::Debug for FracVElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_I x_I y_I`, with `{v_I}` orthonormal.
pub fn shapovalov(x: &VElement, y: &VElement) -> MPoly {
    let mut acc = MPoly::zero();
    for (i, p) in &x.terms {
        if let Some(q) = y.terms.get(i) {
            acc.add_assign_ref(&(p * q));
        }
    }
    acc
}

/// `𝒮₊₋(x, w/D) = Σ_I x_I w_I / D`, which must be a polynomial.
pub fn shapovalov_pm(x: &VElement, y: &FracVElement) -> Result<MPoly> {
    let s = shapovalov(x, &y.num);
    s.div_exact(&global_denominator(x.n))
        .ok_or_else(|| Error::Consistency(format!("pairing {s} is not divisible by D")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::weight::enumerate_decompositions;

    fn dec(c: &[u8]) -> Decomposition {
        Decomposition::from_colors(c.to_vec())
    }

    #[test]
    fn generator_examples() {
        let x = VElement::basis(&dec(&[0, 0]), 2, MPoly::one());
        let y = x.act_generator(2, 1, 1);
        let mut expect = VElement::basis(&dec(&[1, 0]), 2, MPoly::z(1));
        expect.add_term(dec(&[0, 1]), &MPoly::z(2));
        assert_eq!(y, expect);

        let lam = Weight::new(vec![2, 1]).unwrap();
        let mut x = VElement::zero(3, 2);
        for (k, i) in enumerate_decompositions(&lam).into_iter().enumerate() {
            x.add_term(i, &(&MPoly::z(k + 1) + &MPoly::int(k as i64)));
        }
        assert_eq!(x.act_generator(1, 1, 0), x.scale(&Rat::from_int(2)));
        let mut central = VElement::zero(3, 2);
        for i in 1..=2 {
            central = central.add(&x.act_generator(i, i, 3));
        }
        let p3 = crate::poly::symmetric::power_sum(3, &[Var::Z(1), Var::Z(2), Var::Z(3)]);
        assert_eq!(central, x.mul_poly(&p3));
    }

    #[test]
    fn sn_examples() {
        let x = VElement::basis(&dec(&[0, 1]), 2, MPoly::z(1));
        assert_eq!(x.sn_act(&[0, 1]), x);
        let y = x.sn_act(&[1, 0]);
        assert_eq!(y, VElement::basis(&dec(&[1, 0]), 2, MPoly::z(2)));
        assert_eq!(y.sn_act(&[1, 0]), x);
    }

    #[test]
    fn projections() {
        let x = VElement::basis(&dec(&[0, 1]), 2, MPoly::one());
        let half = Rat::new(1, 2);
        let mut expect = VElement::basis(&dec(&[0, 1]), 2, MPoly::constant(half.clone()));
        expect.add_term(dec(&[1, 0]), &MPoly::constant(-half));
        assert_eq!(project_symmetric(&x, -1), expect);
        let sym = project_symmetric(&x, 1);
        assert_eq!(project_symmetric(&sym, 1), sym);
        assert!(project_symmetric(&sym, -1).is_zero());
    }

    #[test]
    fn shapovalov_examples() {
        let i = dec(&[0, 1]);
        let j = dec(&[1, 0]);
        let a = VElement::basis(&i, 2, MPoly::one());
        assert_eq!(shapovalov(&a, &a), MPoly::one());
        assert!(shapovalov(&a, &VElement::basis(&j, 2, MPoly::one())).is_zero());
        let b = VElement::basis(&i, 2, MPoly::z(1));
        let c = VElement::basis(&i, 2, MPoly::z(2));
        assert_eq!(shapovalov(&b, &c), &MPoly::z(1) * &MPoly::z(2));

        // (v12 + v21) against (v12 − v21)/(z2 − z1): the terms cancel.
        let plus = a.add(&VElement::basis(&j, 2, MPoly::one()));
        let minus = FracVElement::new(a.sub(&VElement::basis(&j, 2, MPoly::one())));
        assert!(shapovalov_pm(&plus, &minus).unwrap().is_zero());
        // a non-divisible pairing is reported
        assert!(shapovalov_pm(&a, &FracVElement::new(a.clone())).is_err());
    }
}
