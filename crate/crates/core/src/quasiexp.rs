//! Quasi-exponentials `Σ_i(u) = e^{K_i u} p_i(u)`, their Wronskian, the
//! fundamental operator `𝒟_Σ` with coefficients `F_{ij}`, and the map `η`
//! from `ℂ[Σ]` to `H_λ`.
//!
//! Exponential factors are never expanded: `∂(e^{Ku} q) = e^{Ku}(K q + q′)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::bethe::{
    apply_uea, apply_uea_at, expand_universal_operator, sweep_cells, zone_limit, zone_normalization, zone_values,
    KMode, SweepCell,
};
use crate::cohomology::{eval_z, gamma_vars, i_minus, i_plus, module_basis, CohClass};
use crate::combinat::{perm_sign, permutations};
use crate::error::{arg, consistency, Error, Result};
use crate::linalg::{sparse_rank, SparseVec};
use crate::poly::symmetric::elementary_or_one;
use crate::poly::{MPoly, Monomial, Var};
use crate::rat::Rat;
use crate::series::{DiffOpSeries, Ring, UInvSeries};
use crate::tensor::{global_denominator, singular_subspace, Decomposition, InvariantModel, Space, VElement, Weight};

/// Polynomial in `u`; entry `k` is the coefficient of `u^k`.
pub type UPoly = Vec<MPoly>;

fn upoly_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(MPoly::is_zero) {
        p.pop();
    }
    p
}

fn upoly_add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    upoly_trim(
        (0..n)
            .map(|k| match (a.get(k), b.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => MPoly::zero(),
            })
            .collect(),
    )
}

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![MPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j].add_assign_ref(&(x * y));
            }
        }
    }
    upoly_trim(out)
}

fn upoly_scale(a: &UPoly, c: &MPoly) -> UPoly {
    upoly_trim(a.iter().map(|x| x * c).collect())
}

fn upoly_deriv(a: &UPoly) -> UPoly {
    upoly_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, x)| x.scale(&Rat::from_int(k as i64)))
            .collect(),
    )
}

/// Leibniz expansion; the matrices here are at most `(N+1) × (N+1)`.
fn upoly_det(m: &[Vec<UPoly>]) -> UPoly {
    let n = m.len();
    let mut acc = Vec::new();
    for p in permutations(n) {
        let mut term = vec![MPoly::one()];
        for (r, &c) in p.iter().enumerate() {
            term = upoly_mul(&term, &m[r][c]);
            if term.is_empty() {
                break;
            }
        }
        if perm_sign(&p) < 0 {
            term = upoly_scale(&term, &MPoly::int(-1));
        }
        acc = upoly_add(&acc, &term);
    }
    acc
}

fn k_factor(a: u8, b: u8) -> MPoly {
    &MPoly::var(Var::K(b)) - &MPoly::var(Var::K(a))
}

/// `num / ∏_{a<b} (K_b − K_a)^{e_{ab}}`, kept with no common factor.
#[derive(Clone, PartialEq)]
pub struct KFrac {
    num: MPoly,
    den: BTreeMap<(u8, u8), u32>,
}

impl KFrac {
    pub fn from_poly(p: MPoly) -> Self {
        KFrac {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn new(num: MPoly, den: BTreeMap<(u8, u8), u32>) -> Self {
        KFrac { num, den }.reduced()
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let keys: Vec<(u8, u8)> = self.den.keys().copied().collect();
        for (a, b) in keys {
            let f = k_factor(a, b);
            while self.den[&(a, b)] > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        *self.den.get_mut(&(a, b)).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, e| *e > 0);
        self
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den_poly(&self) -> MPoly {
        self.den
            .iter()
            .map(|(&(a, b), &e)| k_factor(a, b).pow(e))
            .product()
    }

    /// The polynomial, if there is no denominator.
    pub fn to_poly(&self) -> Option<MPoly> {
        self.den.is_empty().then(|| self.num.clone())
    }

    /// Substitute numeric `K`.
    pub fn eval_k(&self, k: &[Rat]) -> Result<MPoly> {
        let sub = |p: &MPoly| {
            p.eval(|v| match v {
                Var::K(i) => k.get(i as usize - 1).cloned(),
                _ => None,
            })
        };
        let d = sub(&self.den_poly());
        if d.is_zero() {
            return arg("denominator vanishes at the given K");
        }
        Ok(sub(&self.num).scale(&d.constant_term().recip()))
    }

    fn scale(&self, c: &Rat) -> KFrac {
        KFrac::new(self.num.scale(c), self.den.clone())
    }
}

impl Ring for KFrac {
    fn zero() -> Self {
        KFrac::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        KFrac::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut den = self.den.clone();
        for (k, &e) in &o.den {
            let slot = den.entry(*k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |x: &KFrac| -> MPoly {
            let mut p = x.num.clone();
            for (&(a, b), &e) in &den {
                let have = x.den.get(&(a, b)).copied().unwrap_or(0);
                if e > have {
                    p = &p * &k_factor(a, b).pow(e - have);
                }
            }
            p
        };
        KFrac::new(&lift(self) + &lift(o), den)
    }
    fn neg(&self) -> Self {
        KFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return KFrac::zero();
        }
        let mut den = self.den.clone();
        for (k, &e) in &o.den {
            *den.entry(*k).or_insert(0) += e;
        }
        KFrac::new(&self.num * &o.num, den)
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rat::from_int(k))
    }
}

impl fmt::Display for KFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den_poly())
        }
    }
}

impl fmt::Debug for KFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The data `(K_i, p_i(u))`, `i = 1..N`.
#[derive(Clone, Debug)]
pub struct QuasiExponentialFamily {
    pub lambda: Weight,
    singular: bool,
    symbolic_k: bool,
    exps: Vec<MPoly>,
    polys: Vec<UPoly>,
    sigma: Vec<Vec<(usize, Var)>>,
}

impl QuasiExponentialFamily {
    /// `p_i = u^{λ_i} + Σ_j Σ_{ij} u^{λ_i − j}` with exponents `K_i`.
    pub fn generic(lambda: &Weight, k: &KMode) -> Result<Self> {
        let nb = lambda.len();
        let exps: Vec<MPoly> = match k {
            KMode::Symbolic => (1..=nb).map(|i| MPoly::var(Var::K(i as u8))).collect(),
            KMode::Values(v) => {
                if v.len() != nb {
                    return arg(format!("{} K values given for N = {nb}", v.len()));
                }
                for a in 0..nb {
                    for b in 0..a {
                        if v[a] == v[b] {
                            return arg(format!("K_{} = K_{} makes the Wronskian degenerate", b + 1, a + 1));
                        }
                    }
                }
                v.iter().map(|x| MPoly::constant(x.clone())).collect()
            }
        };
        let mut polys = Vec::new();
        let mut sigma = Vec::new();
        for i in 1..=nb {
            let d = lambda.part(i);
            let vars: Vec<(usize, Var)> = (1..=d).map(|j| (j, Var::S(i as u8, j as u8))).collect();
            polys.push(Self::monic(d, &vars));
            sigma.push(vars);
        }
        Ok(QuasiExponentialFamily {
            lambda: lambda.clone(),
            singular: false,
            symbolic_k: *k == KMode::Symbolic,
            exps,
            polys,
            sigma,
        })
    }

    /// `K = 0`, `p_i = u^{d_i} + Σ_{j : d_i − j ∉ P} Σ_{ij} u^{d_i − j}` with
    /// `d_i = λ_i + N − i` and `P = {d_1, …, d_N}`.
    pub fn singular(lambda: &Weight) -> Result<Self> {
        if !lambda.is_dominant() {
            return arg(format!("{lambda} is not dominant"));
        }
        let nb = lambda.len();
        let d: Vec<usize> = (1..=nb).map(|i| lambda.part(i) + nb - i).collect();
        let mut polys = Vec::new();
        let mut sigma = Vec::new();
        for i in 1..=nb {
            let vars: Vec<(usize, Var)> = (1..=d[i - 1])
                .filter(|&j| !d.contains(&(d[i - 1] - j)))
                .map(|j| (j, Var::S(i as u8, j as u8)))
                .collect();
            polys.push(Self::monic(d[i - 1], &vars));
            sigma.push(vars);
        }
        Ok(QuasiExponentialFamily {
            lambda: lambda.clone(),
            singular: true,
            symbolic_k: false,
            exps: vec![MPoly::zero(); nb],
            polys,
            sigma,
        })
    }

    fn monic(d: usize, vars: &[(usize, Var)]) -> UPoly {
        let mut p = vec![MPoly::zero(); d + 1];
        p[d] = MPoly::one();
        for &(j, v) in vars {
            p[d - j] = MPoly::var(v);
        }
        p
    }

    pub fn n_big(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// `p_i` (1-based).
    pub fn poly(&self, i: usize) -> &UPoly {
        &self.polys[i - 1]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.polys[i - 1].len() - 1
    }

    /// The `Σ` variables of `p_i` with their `j` labels.
    pub fn sigma_vars(&self, i: usize) -> &[(usize, Var)] {
        &self.sigma[i - 1]
    }

    /// `q_{i,0..=upto}` with `∂^k Σ_i = e^{K_i u} q_{i,k}`.
    fn derivative_polys(&self, i: usize, upto: usize) -> Vec<UPoly> {
        let k = &self.exps[i - 1];
        let mut out = vec![self.polys[i - 1].clone()];
        for _ in 0..upto {
            let q = out.last().unwrap();
            out.push(upoly_add(&upoly_scale(q, k), &upoly_deriv(q)));
        }
        out
    }

    /// `[q_{i,k}]` for `i = from..=N`, `k = 0..cols`.
    fn matrix(&self, from: usize, cols: usize) -> Vec<Vec<UPoly>> {
        (from..=self.n_big())
            .map(|i| self.derivative_polys(i, cols.saturating_sub(1)))
            .collect()
    }

    /// The `u`-degree of `Wr(Σ_from, …, Σ_N)`: `Σ_{m ≥ from} deg p_m`, less
    /// `(rows choose 2)` when `K = 0`.
    fn wr_degree(&self, from: usize) -> usize {
        let rows = self.n_big() + 1 - from;
        let total: usize = (from..=self.n_big()).map(|m| self.degree(m)).sum();
        if self.singular {
            total - rows * (rows - 1) / 2
        } else {
            total
        }
    }

    /// Inverse of the leading coefficient of `Wr(Σ_from, …, Σ_N)`:
    /// `∏_{from ≤ a < b} (K_b − K_a)`, or `∏ (d_b − d_a)` when `K = 0`.
    fn leading_inverse(&self, from: usize) -> Result<KFrac> {
        let nb = self.n_big();
        if self.symbolic_k {
            let mut den = BTreeMap::new();
            for a in from..=nb {
                for b in a + 1..=nb {
                    den.insert((a as u8, b as u8), 1);
                }
            }
            return Ok(KFrac::new(MPoly::one(), den));
        }
        let mut lc = Rat::one();
        for a in from..=nb {
            for b in a + 1..=nb {
                let f = if self.singular {
                    Rat::from_int(self.degree(b) as i64 - self.degree(a) as i64)
                } else {
                    (&self.exps[b - 1] - &self.exps[a - 1]).constant_term()
                };
                lc = &lc * &f;
            }
        }
        if lc.is_zero() {
            return arg("Wronskian has a vanishing leading coefficient");
        }
        Ok(KFrac::from_poly(MPoly::constant(lc.recip())))
    }
}

/// `Wr(Σ_1, …, Σ_N) = e^{(K_1 + … + K_N) u} · poly`.
#[derive(Clone, Debug, PartialEq)]
pub struct Wronskian {
    pub exponent: MPoly,
    pub poly: UPoly,
}

pub fn wronskian(f: &QuasiExponentialFamily) -> Wronskian {
    Wronskian {
        exponent: f.exps.iter().cloned().sum(),
        poly: upoly_det(&f.matrix(1, f.n_big())),
    }
}

/// The Wronskian polynomial divided by its leading coefficient, as
/// coefficients of `u^0 … u^n`.
pub fn normalized_wronskian(f: &QuasiExponentialFamily) -> Result<Vec<KFrac>> {
    let w = wronskian(f);
    let inv = f.leading_inverse(1)?;
    let n = f.wr_degree(1);
    if w.poly.len() != n + 1 {
        return consistency(format!("Wronskian has degree {} instead of {n}", w.poly.len() as i64 - 1));
    }
    let out: Vec<KFrac> = w.poly.iter().map(|c| KFrac::from_poly(c.clone()).mul(&inv)).collect();
    if out[n] != KFrac::one() {
        return consistency(format!("normalized Wronskian has leading coefficient {}", out[n]));
    }
    Ok(out)
}

/// `A^K_s`, `s = 1..=n` (entry `s − 1`), from
/// `Wr / lc = u^n + Σ_s (−1)^s A^K_s u^{n−s}`.
pub fn extract_wk(f: &QuasiExponentialFamily) -> Result<Vec<KFrac>> {
    let w = normalized_wronskian(f)?;
    let n = w.len() - 1;
    Ok((1..=n)
        .map(|s| if s % 2 == 1 { w[n - s].neg() } else { w[n - s].clone() })
        .collect())
}

/// `A^∞_s` from `∏_i p_i(u) = u^n + Σ_s (−1)^s A^∞_s u^{n−s}`.
pub fn winfty(f: &QuasiExponentialFamily) -> Result<Vec<MPoly>> {
    if f.singular {
        return arg("the K → ∞ limit is defined for generic families");
    }
    let prod = f.polys.iter().fold(vec![MPoly::one()], |acc, p| upoly_mul(&acc, p));
    let n = prod.len() - 1;
    Ok((1..=n)
        .map(|s| if s % 2 == 1 { -&prod[n - s] } else { prod[n - s].clone() })
        .collect())
}

/// `c(u) · u^{−n} · inv` as a `u⁻¹`-series; `c` must have degree `≤ n`.
fn poly_over(c: &UPoly, n: usize, inv: &KFrac, jmax: usize) -> Result<UInvSeries<KFrac>> {
    if c.len() > n + 1 {
        return consistency(format!("polynomial of degree {} over u^{n}", c.len() - 1));
    }
    let coeffs = (0..=jmax)
        .map(|j| match n.checked_sub(j).and_then(|k| c.get(k)) {
            Some(x) if !x.is_zero() => KFrac::from_poly(x.clone()).mul(inv),
            _ => KFrac::zero(),
        })
        .collect();
    Ok(UInvSeries::from_coeffs(coeffs, jmax))
}

/// `𝒟_Σ = ∂^N + Σ_i F_i(u) ∂^{N−i}`: the row determinant with rows
/// `(Σ_i, Σ_i′, …, Σ_i^{(N)})` and last row `(1, ∂, …, ∂^N)`, divided by the
/// Wronskian.
pub fn fundamental_diffop(f: &QuasiExponentialFamily, jmax: usize) -> Result<DiffOpSeries<KFrac>> {
    let nb = f.n_big();
    let m = f.matrix(1, nb + 1);
    let n = f.wr_degree(1);
    let inv = f.leading_inverse(1)?;
    let minor = |skip: usize| -> UPoly {
        let rows: Vec<Vec<UPoly>> = m
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, p)| p.clone()).collect())
            .collect();
        upoly_det(&rows)
    };
    let w = poly_over(&minor(nb), n, &inv, jmax)?;
    if *w.coeff(0) != KFrac::one() {
        return consistency("Wronskian series does not start with 1");
    }
    let winv = w.inverse_with(&KFrac::one());
    let mut coeffs = Vec::new();
    for k in 0..=nb {
        let mut c = poly_over(&minor(k), n, &inv, jmax)?;
        if (nb + k) % 2 == 1 {
            c = c.neg();
        }
        coeffs.push(c.mul(&winv));
    }
    Ok(DiffOpSeries::from_coeffs(coeffs, jmax))
}

/// `F_{ij}`: coefficient of `u^{−j}` in the coefficient of `∂^{N−i}`.
pub fn f_coeff(op: &DiffOpSeries<KFrac>, n_big: usize, i: usize, j: usize) -> KFrac {
    op.coeff(n_big - i).coeff(j).clone()
}

/// `𝒟_Σ Σ_i = 0` on every Laurent coefficient fixed by the truncation.
pub fn kernel_check(f: &QuasiExponentialFamily, op: &DiffOpSeries<KFrac>) -> Result<()> {
    let nb = f.n_big();
    let jmax = op.jmax() as i64;
    for i in 1..=nb {
        let q = f.derivative_polys(i, nb);
        let top = f.degree(i) as i64;
        for e in (top - jmax)..=top {
            let mut acc = KFrac::zero();
            for (k, qk) in q.iter().enumerate() {
                let fk = op.coeff(k);
                for j in 0..=jmax {
                    let pos = e + j;
                    if pos < 0 || pos as usize >= qk.len() {
                        continue;
                    }
                    let c = &qk[pos as usize];
                    if !c.is_zero() {
                        acc = acc.add(&fk.coeff(j as usize).mul(&KFrac::from_poly(c.clone())));
                    }
                }
            }
            if !acc.is_zero() {
                return Err(Error::Verification(format!(
                    "𝒟 Σ_{i} has coefficient {acc} at u^{e}"
                )));
            }
        }
    }
    Ok(())
}

/// `Y_i′/Y_i` for `Y_i` the polynomial part of `Wr(Σ_i, …, Σ_N)`.
fn log_derivative(f: &QuasiExponentialFamily, from: usize, jmax: usize) -> Result<UInvSeries<KFrac>> {
    let cols = f.n_big() + 1 - from;
    let y = upoly_det(&f.matrix(from, cols));
    let n = f.wr_degree(from);
    let inv = f.leading_inverse(from)?;
    let ys = poly_over(&y, n, &inv, jmax)?;
    let dys = poly_over(&upoly_deriv(&y), n, &inv, jmax)?;
    Ok(dys.mul(&ys.inverse_with(&KFrac::one())))
}

/// The factors `∂ − K_i − Y_i′/Y_i + Y_{i+1}′/Y_{i+1}`, `i = 1..N`.
pub fn factorization(f: &QuasiExponentialFamily, jmax: usize) -> Result<Vec<DiffOpSeries<KFrac>>> {
    let nb = f.n_big();
    let logs: Vec<UInvSeries<KFrac>> = (1..=nb)
        .map(|i| log_derivative(f, i, jmax))
        .chain(std::iter::once(Ok(UInvSeries::zero(jmax))))
        .collect::<Result<_>>()?;
    Ok((1..=nb)
        .map(|i| {
            let k = UInvSeries::constant(KFrac::from_poly(f.exps[i - 1].clone()), jmax);
            let s = k.add(&logs[i - 1]).sub(&logs[i]);
            DiffOpSeries::d_power(1, jmax).sub(&DiffOpSeries::scalar(s))
        })
        .collect())
}

/// `𝒟_Σ` equals the ordered product of its first-order factors.
pub fn factorization_check(f: &QuasiExponentialFamily, jmax: usize) -> Result<()> {
    let op = fundamental_diffop(f, jmax)?;
    let factors = factorization(f, jmax)?;
    let mut prod = DiffOpSeries::d_power(0, jmax);
    for fac in &factors {
        prod = prod.compose(fac);
    }
    let nb = f.n_big();
    for k in 0..=nb {
        for j in 0..=jmax {
            let (a, b) = (op.coeff(k).coeff(j).clone(), prod.coeff(k).coeff(j).clone());
            if a != b {
                return Err(Error::Verification(format!(
                    "coefficient of ∂^{k} u^-{j}: operator {a}, product {b}"
                )));
            }
        }
    }
    Ok(())
}

/// `η`: `(−1)^s Σ_{is} ↦ e_s(Γ_i)`.
pub fn eta(x: &MPoly, lambda: &Weight) -> MPoly {
    x.substitute(|v| match v {
        Var::S(i, s) => {
            let e = elementary_or_one(s as usize, &gamma_vars(lambda, i as usize));
            Some(if s % 2 == 1 { -e } else { e })
        }
        _ => None,
    })
}

/// `η(A^∞_s) = σ_s(z)` in `H_λ`, and `η(A^∞_s x) = σ_s(z) η(x)` for the
/// sampled `x` (all `Σ`-monomials of total degree `≤ 2`).
pub fn lemma_4_3_check(lambda: &Weight) -> Result<usize> {
    let f = QuasiExponentialFamily::generic(lambda, &KMode::Symbolic)?;
    let a = winfty(&f)?;
    let zs: Vec<Var> = (1..=lambda.n()).map(|s| Var::Z(s as u8)).collect();
    let vars: Vec<Var> = (1..=f.n_big()).flat_map(|i| f.sigma_vars(i).iter().map(|p| p.1)).collect();
    let mut samples = vec![MPoly::one()];
    for (k, v) in vars.iter().enumerate() {
        samples.push(MPoly::var(*v));
        for w in &vars[k..] {
            samples.push(&MPoly::var(*v) * &MPoly::var(*w));
        }
    }
    let mut count = 0;
    for (s, a_s) in a.iter().enumerate() {
        let sigma = elementary_or_one(s + 1, &zs);
        for x in &samples {
            let lhs = CohClass::from_rep(lambda, &eta(&(a_s * x), lambda))?;
            let rhs = CohClass::from_rep(lambda, &eta(x, lambda))?.mul_z(&sigma);
            if lhs.restrictions().ne(rhs.restrictions()) {
                return Err(Error::Verification(format!(
                    "η(A_{} · {x}) differs from σ_{}(z) η({x}) at {lambda}",
                    s + 1,
                    s + 1
                )));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `A^K_s → A^∞_s` along the zone `σ`.
pub fn wk_limit_sweep(lambda: &Weight, sigma: &[usize], scales: &[Rat]) -> Result<Vec<SweepCell>> {
    let sym = QuasiExponentialFamily::generic(lambda, &KMode::Symbolic)?;
    let inf = winfty(&sym)?;
    let ak = extract_wk(&sym)?;
    let mut out = Vec::new();
    for (s, (a, b)) in ak.iter().zip(&inf).enumerate() {
        out.extend(sweep_cells(&format!("A{}", s + 1), scales, |c| {
            let k = zone_values(sigma, c);
            Ok((&a.eval_k(&k)? - b).max_abs_coeff())
        })?);
    }
    Ok(out)
}

/// `p′/p` as a `u⁻¹`-series.
fn log_derivative_poly(p: &UPoly, jmax: usize) -> Result<UInvSeries<KFrac>> {
    let n = p.len() - 1;
    let one = KFrac::one();
    let s = poly_over(p, n, &one, jmax)?;
    Ok(poly_over(&upoly_deriv(p), n, &one, jmax)?.mul(&s.inverse_with(&one)))
}

/// The predicted limit of the normalized `F_{ij}` in zone `σ`:
/// `[u^{−j}] Σ_{k ≥ i} p′_{σ(k)}/p_{σ(k)}` for `j ≥ 1`, and `1` for `j = 0`.
pub fn f_zone_limit(f: &QuasiExponentialFamily, sigma: &[usize], i: usize, j: usize) -> Result<MPoly> {
    if j == 0 {
        return Ok(MPoly::one());
    }
    let mut acc = MPoly::zero();
    for &s in &sigma[i - 1..] {
        let l = log_derivative_poly(f.poly(s + 1), j)?;
        acc.add_assign_ref(&l.coeff(j).to_poly().expect("no K in p_i"));
    }
    Ok(acc)
}

/// Normalized `F^K_{ij}` against its predicted limit along the zone `σ`.
pub fn lemma_4_4_sweep(lambda: &Weight, sigma: &[usize], scales: &[Rat], jmax: usize) -> Result<Vec<SweepCell>> {
    let nb = lambda.len();
    let sym = QuasiExponentialFamily::generic(lambda, &KMode::Symbolic)?;
    let ops: Vec<(Vec<Rat>, DiffOpSeries<KFrac>)> = scales
        .iter()
        .map(|c| {
            let k = zone_values(sigma, c);
            let f = QuasiExponentialFamily::generic(lambda, &KMode::Values(k.clone()))?;
            Ok((k, fundamental_diffop(&f, jmax)?))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 1..=nb {
        for j in 0..=jmax {
            let limit = f_zone_limit(&sym, sigma, i, j)?;
            let mut at = 0;
            out.extend(sweep_cells(&format!("F{i}{j}"), scales, |_| {
                let (k, op) = &ops[at];
                at += 1;
                let norm = zone_normalization(sigma, k, i, j).recip();
                let fij = f_coeff(op, nb, i, j).to_poly().expect("numeric K").scale(&norm);
                Ok((&fij - &limit).max_abs_coeff())
            })?);
        }
    }
    Ok(out)
}

/// Which embedding to transport through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `i±(x)` evaluated at `z`, as values indexed by fixed point. For the
/// minus sign the values are the actual fractions `x_I / R(I)`.
fn embedded_at(x: &CohClass, sign: Sign, z: &[Rat]) -> VElement {
    let v = match sign {
        Sign::Plus => i_plus(x),
        Sign::Minus => i_minus(x).num,
    };
    let v = v.eval(|var| match var {
        Var::Z(s) => z.get(s as usize - 1).cloned(),
        _ => None,
    });
    match sign {
        Sign::Plus => v,
        Sign::Minus => v.scale(&eval_z(&global_denominator(x.lambda.n()), z).recip()),
    }
}

fn max_abs_velement(x: &VElement) -> Rat {
    x.terms()
        .map(|(_, p)| p.max_abs_coeff())
        .fold(Rat::zero(), |a, b| if b > a { b } else { a })
}

/// The `K → ∞` limit of `η ∘ τ^{K±}` and `η ∘ μ^{K±}` along the zone `σ`,
/// at the point `z`, over the module basis `{b}` of `H_λ`:
///
/// - `ητ(Bij)`: `i±(η(F̃_{ij}) b)` against the limit current
///   `Σ_{k≥i} e_{σ(k)σ(k)} ⊗ t^{j−1}` acting on `i±(b)`;
/// - `ημ(Bij v±)`: the same for `b = 1`, i.e. on `v±`;
/// - `defect(Bij)`: `B̃_{ij} i±(b)` against `i±(η(F̃_{ij}) b)` at the same `K`.
///
/// Tildes denote the zone normalization.
pub fn langlands_limit_sweep(
    lambda: &Weight,
    sign: Sign,
    sigma: &[usize],
    scales: &[Rat],
    jmax: usize,
    z: &[Rat],
) -> Result<Vec<SweepCell>> {
    let nb = lambda.len();
    let fam = expand_universal_operator(nb, jmax, KMode::Symbolic)?;
    let basis = module_basis(lambda)?;
    let embedded: Vec<VElement> = basis.classes.iter().map(|b| embedded_at(b, sign, z)).collect();
    let ops: Vec<(Vec<Rat>, DiffOpSeries<KFrac>)> = scales
        .iter()
        .map(|c| {
            let k = zone_values(sigma, c);
            let f = QuasiExponentialFamily::generic(lambda, &KMode::Values(k.clone()))?;
            Ok((k, fundamental_diffop(&f, jmax)?))
        })
        .collect::<Result<_>>()?;
    let one = CohClass::one(lambda);
    let v_index = basis
        .classes
        .iter()
        .position(|b| b.restrictions().eq(one.restrictions()))
        .ok_or_else(|| Error::Consistency("module basis does not contain 1".into()))?;
    let mut out = Vec::new();
    for i in 1..=nb {
        for j in 0..=jmax {
            let limit = zone_limit(sigma, i, j);
            let limit_images: Vec<VElement> = embedded.iter().map(|x| apply_uea_at(&limit, x, z)).collect();
            // (ητ, ημ, defect) per scale
            let mut per_scale: Vec<[Rat; 3]> = Vec::new();
            for (k, op) in &ops {
                let norm = zone_normalization(sigma, k, i, j).recip();
                let b = fam.get(i, j).eval_k(k).scale(&norm);
                let fij = f_coeff(op, nb, i, j).to_poly().expect("numeric K").scale(&norm);
                let mult = CohClass::from_rep(lambda, &eta(&fij, lambda))?;
                let mut cell = [Rat::zero(), Rat::zero(), Rat::zero()];
                for (l, cls) in basis.classes.iter().enumerate() {
                    let transported = embedded_at(&mult.mul(cls), sign, z);
                    let tau = max_abs_velement(&transported.sub(&limit_images[l]));
                    let defect = max_abs_velement(&apply_uea_at(&b, &embedded[l], z).sub(&transported));
                    if l == v_index {
                        cell[1] = tau.clone();
                    }
                    if tau > cell[0] {
                        cell[0] = tau;
                    }
                    if defect > cell[2] {
                        cell[2] = defect;
                    }
                }
                per_scale.push(cell);
            }
            let labels = [
                format!("ητ(B{i}{j})"),
                format!("ημ(B{i}{j}·v{sign})"),
                format!("defect(B{i}{j})"),
            ];
            for (slot, label) in labels.iter().enumerate() {
                let mut at = 0;
                out.extend(sweep_cells(label, scales, |_| {
                    at += 1;
                    Ok(per_scale[at - 1][slot].clone())
                })?);
            }
        }
    }
    Ok(out)
}

/// Ranks found by the singular-case comparison in one degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeRanks {
    pub degree: usize,
    pub monomials: usize,
    pub bethe_rank: usize,
    pub sigma_rank: usize,
    pub joint_rank: usize,
}

/// Outcome of the singular-case comparison.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SingularReport {
    pub lambda: Weight,
    pub singular_degree: i64,
    pub singular_dim: usize,
    pub degrees: Vec<DegreeRanks>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum JointKey {
    Vector(Decomposition, Monomial),
    Sigma(Monomial),
}

/// Generators for the singular comparison: `(label, degree, Bethe side,
/// Σ side)`. The Bethe side is either `B_{ij}` or multiplication by `σ_s(z)`.
enum BetheSide {
    Element(crate::bethe::UEAElement),
    Multiply(MPoly),
}

/// For dominant `λ` with `K = 0`: the lowest singular vector `v⁻` of
/// `(1/D) 𝕍⁻_λ` is unique and sits in degree `Σ (1−i) λ_i`; `B_{ij} v⁻ = 0`
/// for `j < i`; `B_{ii} v⁻ = F_{ii} v⁻`; and degree by degree, monomials in
/// `B_{ij}` (`j > i`) and `σ_s(z)` applied to `v⁻` satisfy exactly the linear
/// relations of the matching monomials in `F_{ij}` and `A_s`.
pub fn singular_case_check(lambda: &Weight, degree_bound: usize) -> Result<SingularReport> {
    let nb = lambda.len();
    let qe = QuasiExponentialFamily::singular(lambda)?;
    let jmax = nb + degree_bound;
    let op = fundamental_diffop(&qe, jmax)?;
    kernel_check(&qe, &op)?;
    let f = |i: usize, j: usize| -> Result<MPoly> {
        f_coeff(&op, nb, i, j)
            .to_poly()
            .ok_or_else(|| Error::Consistency("F_ij has a K denominator at K = 0".into()))
    };
    for i in 1..=nb {
        for j in 0..i.min(jmax + 1) {
            if !f(i, j)?.is_zero() {
                return Err(Error::Verification(format!("F{i}{j} = {} should vanish", f(i, j)?)));
            }
        }
    }

    let model = InvariantModel::new(Space::MinusOverD, lambda);
    let k0: i64 = -(lambda.parts().iter().enumerate().map(|(i, &l)| (i * l) as i64).sum::<i64>());
    let mut lowest = None;
    for kk in model.min_degree()..=model.top_degree() {
        let s = singular_subspace(Space::MinusOverD, lambda, kk)?;
        if !s.is_empty() {
            lowest = Some((kk, s));
            break;
        }
    }
    let (kk, sing) =
        lowest.ok_or_else(|| Error::Verification("no singular vector below the top degree".into()))?;
    let found = model.public_degree(kk);
    if sing.len() != 1 {
        return Err(Error::Verification(format!(
            "{} singular vectors in the lowest degree {found}, expected exactly one",
            sing.len()
        )));
    }
    let v = model.to_frac(&sing[0]).num;

    let fam = expand_universal_operator(nb, jmax, KMode::Values(vec![Rat::zero(); nb]))?;
    for i in 1..=nb {
        for j in 0..=i.min(jmax) {
            let bv = apply_uea(fam.get(i, j), &v);
            let expect = if j == i { v.mul_poly(&f(i, i)?) } else { VElement::zero(v.n(), nb) };
            if bv != expect {
                return Err(Error::Verification(format!("B{i}{j} v⁻ = {bv}, expected {expect}")));
            }
        }
    }

    let zs: Vec<Var> = (1..=lambda.n()).map(|s| Var::Z(s as u8)).collect();
    let a = extract_wk(&qe)?;
    let mut gens: Vec<(usize, BetheSide, MPoly)> = Vec::new();
    for i in 1..=nb {
        for j in i + 1..=(i + degree_bound).min(jmax) {
            gens.push((j - i, BetheSide::Element(fam.get(i, j).clone()), f(i, j)?));
        }
    }
    for s in 1..=lambda.n().min(degree_bound) {
        let a_s = a[s - 1]
            .to_poly()
            .ok_or_else(|| Error::Consistency("A_s has a K denominator at K = 0".into()))?;
        gens.push((s, BetheSide::Multiply(elementary_or_one(s, &zs)), a_s));
    }

    // multisets of generators of total degree ≤ bound, grown in index order
    let mut by_degree: Vec<Vec<(VElement, MPoly)>> = vec![Vec::new(); degree_bound + 1];
    let mut frontier: Vec<(usize, usize, VElement, MPoly)> = vec![(0, 0, v.clone(), MPoly::one())];
    by_degree[0].push((v.clone(), MPoly::one()));
    while let Some((start, deg, vec, poly)) = frontier.pop() {
        for (g, (gd, b, fp)) in gens.iter().enumerate().skip(start) {
            let d = deg + gd;
            if d > degree_bound {
                continue;
            }
            let nv = match b {
                BetheSide::Element(e) => apply_uea(e, &vec),
                BetheSide::Multiply(p) => vec.mul_poly(p),
            };
            let np = &poly * fp;
            by_degree[d].push((nv.clone(), np.clone()));
            frontier.push((g, d, nv, np));
        }
    }

    let mut degrees = Vec::new();
    for (d, items) in by_degree.iter().enumerate() {
        let bv: Vec<SparseVec<JointKey>> = items.iter().map(|(x, _)| vector_key(x)).collect();
        let fv: Vec<SparseVec<JointKey>> = items.iter().map(|(_, p)| poly_key(p)).collect();
        let joint: Vec<SparseVec<JointKey>> = bv
            .iter()
            .zip(&fv)
            .map(|(x, y)| x.iter().chain(y.iter()).map(|(k, c)| (k.clone(), c.clone())).collect())
            .collect();
        let r = DegreeRanks {
            degree: d,
            monomials: items.len(),
            bethe_rank: sparse_rank(&bv),
            sigma_rank: sparse_rank(&fv),
            joint_rank: sparse_rank(&joint),
        };
        if !(r.bethe_rank == r.sigma_rank && r.sigma_rank == r.joint_rank) {
            return Err(Error::Verification(format!(
                "degree {d}: rank {} on vectors, {} on F-monomials, {} jointly",
                r.bethe_rank, r.sigma_rank, r.joint_rank
            )));
        }
        degrees.push(r);
    }
    if found != k0 {
        return Err(Error::Verification(format!(
            "lowest singular vector in degree {found}, expected {k0}; \
             degreewise ranks from it agree through degree {degree_bound}"
        )));
    }
    Ok(SingularReport {
        lambda: lambda.clone(),
        singular_degree: found,
        singular_dim: 1,
        degrees,
    })
}

fn vector_key(x: &VElement) -> SparseVec<JointKey> {
    let mut out = SparseVec::new();
    for (i, p) in x.terms() {
        for (m, c) in p.terms() {
            out.insert(JointKey::Vector(i.clone(), m.clone()), c.clone());
        }
    }
    out
}

fn poly_key(p: &MPoly) -> SparseVec<JointKey> {
    p.terms().map(|(m, c)| (JointKey::Sigma(m.clone()), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::permutations;
    use crate::linalg::generic_point;

    fn w(p: &[usize]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    fn s(i: u8, j: u8) -> MPoly {
        MPoly::var(Var::S(i, j))
    }

    fn k(i: u8) -> MPoly {
        MPoly::var(Var::K(i))
    }

    fn u_poly(c: &[MPoly]) -> UPoly {
        c.to_vec()
    }

    #[test]
    fn kfrac_arithmetic() {
        let d = BTreeMap::from([((1u8, 2u8), 1u32)]);
        let a = KFrac::new(MPoly::one(), d.clone());
        let b = KFrac::new(k(2) - k(1), BTreeMap::new());
        assert_eq!(a.mul(&b), KFrac::one());
        let x = KFrac::new(k(1), d.clone()).sub(&KFrac::new(k(2), d));
        assert_eq!(x, KFrac::from_poly(MPoly::int(-1)));
        assert_eq!(a.eval_k(&[Rat::from_int(1), Rat::from_int(3)]).unwrap(), MPoly::constant(Rat::new(1, 2)));
        assert!(a.eval_k(&[Rat::from_int(1), Rat::from_int(1)]).is_err());
    }

    #[test]
    fn wronskian_examples() {
        // Wr(e^{K1 u}, e^{K2 u}) = (K2 − K1) e^{(K1+K2)u}
        let f = QuasiExponentialFamily::generic(&w(&[0, 0]), &KMode::Symbolic).unwrap();
        let wr = wronskian(&f);
        assert_eq!(wr.poly, u_poly(&[k(2) - k(1)]));
        assert_eq!(wr.exponent, k(1) + k(2));
        // Wr(1, u) = 1 with K = 0: the singular family of λ = (0, 0)
        let f = QuasiExponentialFamily::singular(&w(&[0, 0])).unwrap();
        assert_eq!(f.poly(1), &u_poly(&[MPoly::zero(), MPoly::one()]));
        assert_eq!(wronskian(&f).poly, u_poly(&[MPoly::int(-1)]));

        let f = QuasiExponentialFamily::generic(&w(&[1, 1]), &KMode::Symbolic).unwrap();
        let wr = wronskian(&f).poly;
        let (a, b) = (s(1, 1), s(2, 1));
        let vk = k(2) - k(1);
        let expect = upoly_add(
            &upoly_scale(&upoly_mul(&u_poly(&[a.clone(), MPoly::one()]), &u_poly(&[b.clone(), MPoly::one()])), &vk),
            &u_poly(&[&a - &b]),
        );
        assert_eq!(wr, expect);
    }

    #[test]
    fn wk_examples() {
        let f = QuasiExponentialFamily::generic(&w(&[1, 1]), &KMode::Symbolic).unwrap();
        let a = extract_wk(&f).unwrap();
        let (x, y) = (s(1, 1), s(2, 1));
        assert_eq!(a[0], KFrac::from_poly(-(&x + &y)));
        let d = BTreeMap::from([((1u8, 2u8), 1u32)]);
        let expect = KFrac::from_poly(&x * &y).add(&KFrac::new(&x - &y, d));
        assert_eq!(a[1], expect);
        let inf = winfty(&f).unwrap();
        assert_eq!(inf, vec![-(&x + &y), &x * &y]);

        let f = QuasiExponentialFamily::generic(&w(&[3]), &KMode::Symbolic).unwrap();
        let a = extract_wk(&f).unwrap();
        for s_ in 1..=3u8 {
            let e = if s_ % 2 == 1 { -s(1, s_) } else { s(1, s_) };
            assert_eq!(a[s_ as usize - 1], KFrac::from_poly(e.clone()));
            assert_eq!(winfty(&f).unwrap()[s_ as usize - 1], e);
        }
        let bad = QuasiExponentialFamily::generic(&w(&[1, 1]), &KMode::Values(vec![Rat::one(), Rat::one()]));
        assert!(bad.is_err());
    }

    #[test]
    fn n1_operator() {
        // 𝒟 = ∂ − K1 − 1/(u + Σ11)
        let f = QuasiExponentialFamily::generic(&w(&[1]), &KMode::Symbolic).unwrap();
        let op = fundamental_diffop(&f, 4).unwrap();
        assert_eq!(f_coeff(&op, 1, 1, 0), KFrac::from_poly(-k(1)));
        let a = s(1, 1);
        for j in 1..=4u32 {
            // −u⁻¹ Σ (−Σ11)^{j−1} u^{−(j−1)}
            let c = (-&a).pow(j - 1);
            assert_eq!(f_coeff(&op, 1, 1, j as usize), KFrac::from_poly(-c));
        }
        kernel_check(&f, &op).unwrap();
    }

    #[test]
    fn operator_kernel_and_factorization() {
        for lam in [w(&[1, 1]), w(&[2, 0]), w(&[0, 2]), w(&[2, 1])] {
            let f = QuasiExponentialFamily::generic(&lam, &KMode::Symbolic).unwrap();
            let op = fundamental_diffop(&f, 4).unwrap();
            assert_eq!(op.coeff(2), UInvSeries::constant(KFrac::one(), 4));
            kernel_check(&f, &op).unwrap();
            factorization_check(&f, 4).unwrap();
        }
        let f = QuasiExponentialFamily::generic(&w(&[1, 0, 1]), &KMode::Symbolic).unwrap();
        factorization_check(&f, 3).unwrap();
    }

    #[test]
    fn f_constant_terms_are_elementary() {
        let f = QuasiExponentialFamily::generic(&w(&[1, 1, 0]), &KMode::Symbolic).unwrap();
        let op = fundamental_diffop(&f, 1).unwrap();
        let ks: Vec<Var> = (1..=3).map(Var::K).collect();
        for i in 1..=3 {
            let e = crate::poly::symmetric::elementary_symmetric(i, &ks).unwrap();
            let e = if i % 2 == 1 { -e } else { e };
            assert_eq!(f_coeff(&op, 3, i, 0), KFrac::from_poly(e));
        }
    }

    #[test]
    fn singular_family_gap_rule() {
        let f = QuasiExponentialFamily::singular(&w(&[1, 1])).unwrap();
        assert_eq!(f.poly(1), &u_poly(&[s(1, 2), MPoly::zero(), MPoly::one()]));
        assert_eq!(f.poly(2), &u_poly(&[s(2, 1), MPoly::one()]));
        let nw = normalized_wronskian(&f).unwrap();
        let expect = [-s(1, 2), s(2, 1).scale(&Rat::from_int(2)), MPoly::one()];
        for (a, b) in nw.iter().zip(expect.iter()) {
            assert_eq!(a, &KFrac::from_poly(b.clone()));
        }
        assert!(QuasiExponentialFamily::singular(&w(&[1, 2])).is_err());
    }

    #[test]
    fn eta_examples() {
        let lam = w(&[2, 1]);
        let g = |i, j| MPoly::var(Var::G(i, j));
        assert_eq!(eta(&-s(1, 1), &lam), &g(1, 1) + &g(1, 2));
        assert_eq!(eta(&(&s(1, 1) * &s(2, 1)), &w(&[1, 1])), &g(1, 1) * &g(2, 1));
        for lam in Weight::all(2, 3).into_iter().chain(Weight::all(3, 2)) {
            lemma_4_3_check(&lam).unwrap();
        }
    }

    #[test]
    fn sweeps_converge() {
        use crate::bethe::sweep_converges;
        let scales: Vec<Rat> = [100, 1000, 10000].iter().map(|&c| Rat::from_int(c)).collect();
        let lam = w(&[1, 1]);
        for sigma in permutations(2) {
            sweep_converges(&wk_limit_sweep(&lam, &sigma, &scales).unwrap(), None).unwrap();
            sweep_converges(&lemma_4_4_sweep(&lam, &sigma, &scales, 3).unwrap(), Some(20.0)).unwrap();
        }
        let z = generic_point(2, 5);
        for sign in [Sign::Plus, Sign::Minus] {
            let cells = langlands_limit_sweep(&lam, sign, &[0, 1], &scales, 2, &z).unwrap();
            sweep_converges(&cells, Some(20.0)).unwrap();
        }
    }

    #[test]
    fn singular_case_small() {
        let r = singular_case_check(&w(&[1, 1]), 4).unwrap();
        assert_eq!(r.singular_degree, -1);
        let r = singular_case_check(&w(&[2, 0]), 3).unwrap();
        assert_eq!(r.singular_degree, 0);
        singular_case_check(&w(&[2]), 2).unwrap();
        // the lowest vector of (2,1) sits one degree below Σ (1−i) λ_i
        let e = singular_case_check(&w(&[2, 1]), 2).unwrap_err().to_string();
        assert!(e.contains("degree -2, expected -1"), "{e}");
    }
}
