//! Equivariant cohomology `H_λ` of the partial flag variety, stored by
//! restrictions to torus-fixed points, with localization, the embeddings
//! `i±` into the tensor module, module bases and graded characters.

use std::collections::BTreeMap;
use std::fmt;

use crate::bethe::{apply_uea, apply_uea_frac, Gen, UEAElement};
use crate::combinat::partitions_in_box;
use crate::error::{arg, consistency, Error, Result};
use crate::linalg::{generic_point, rank};
use crate::poly::symmetric::{block_symmetric_to_power_sums, elementary_or_one, power_sum, schur};
use crate::poly::{LinearFractionSum, MPoly, Monomial, Var};
use crate::rat::Rat;
use crate::tensor::{
    enumerate_decompositions, global_denominator, pairing_matrix, shapovalov_pm, singular_character,
    Decomposition, FracVElement, GradedQuotient, Space, VElement, Weight,
};

/// Chern-root variables `γ_{i1}, …, γ_{iλ_i}` of block `i` (1-based).
pub fn gamma_vars(lambda: &Weight, i: usize) -> Vec<Var> {
    (1..=lambda.part(i)).map(|k| Var::G(i as u8, k as u8)).collect()
}

/// Substitute `Γ_i ↦ z_{I_i}` in a block-symmetric representative.
pub fn restrict(h: &MPoly, i: &Decomposition, lambda: &Weight) -> Result<MPoly> {
    if i.weight(lambda.len()) != *lambda {
        return arg(format!("decomposition {i} does not have block sizes {lambda}"));
    }
    let blocks = i.blocks(lambda.len());
    let mut bad = None;
    let out = h.substitute(|v| match v {
        Var::G(b, k) => match blocks.get(b as usize - 1).and_then(|bl| bl.get(k as usize - 1)) {
            Some(&s) => Some(MPoly::z(s)),
            None => {
                bad = Some(v);
                None
            }
        },
        _ => None,
    });
    if let Some(v) = bad {
        return arg(format!("variable {v} has no slot in a block of {lambda}"));
    }
    Ok(out)
}

/// A class in `H_λ`, given by its restriction to every fixed point `I ∈ I_λ`.
#[derive(Clone, PartialEq)]
pub struct CohClass {
    pub lambda: Weight,
    restr: BTreeMap<Decomposition, MPoly>,
    rep: Option<MPoly>,
}

impl CohClass {
    /// Class of a representative `h(z, Γ_1, …, Γ_N)`.
    pub fn from_rep(lambda: &Weight, h: &MPoly) -> Result<Self> {
        let mut restr = BTreeMap::new();
        for i in enumerate_decompositions(lambda) {
            let r = restrict(h, &i, lambda)?;
            restr.insert(i, r);
        }
        Ok(CohClass {
            lambda: lambda.clone(),
            restr,
            rep: Some(h.clone()),
        })
    }

    /// Class from a restriction vector (no representative attached).
    pub fn from_restrictions(lambda: &Weight, restr: BTreeMap<Decomposition, MPoly>) -> Result<Self> {
        for i in enumerate_decompositions(lambda) {
            if !restr.contains_key(&i) {
                return arg(format!("missing restriction at {i}"));
            }
        }
        if restr.len() != lambda.dim() {
            return arg("restriction vector has foreign keys");
        }
        Ok(CohClass {
            lambda: lambda.clone(),
            restr,
            rep: None,
        })
    }

    pub fn one(lambda: &Weight) -> Self {
        Self::from_rep(lambda, &MPoly::one()).expect("constants restrict everywhere")
    }

    pub fn zero(lambda: &Weight) -> Self {
        Self::from_rep(lambda, &MPoly::zero()).expect("constants restrict everywhere")
    }

    pub fn rep(&self) -> Option<&MPoly> {
        self.rep.as_ref()
    }

    pub fn restriction(&self, i: &Decomposition) -> &MPoly {
        &self.restr[i]
    }

    pub fn restrictions(&self) -> impl Iterator<Item = (&Decomposition, &MPoly)> {
        self.restr.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.restr.values().all(MPoly::is_zero)
    }

    fn zip(&self, o: &CohClass, f: impl Fn(&MPoly, &MPoly) -> MPoly) -> CohClass {
        assert_eq!(self.lambda, o.lambda, "classes live in different H_λ");
        let restr = self
            .restr
            .iter()
            .map(|(i, p)| (i.clone(), f(p, &o.restr[i])))
            .collect();
        let rep = match (&self.rep, &o.rep) {
            (Some(a), Some(b)) => Some(f(a, b)),
            _ => None,
        };
        CohClass {
            lambda: self.lambda.clone(),
            restr,
            rep,
        }
    }

    pub fn add(&self, o: &CohClass) -> CohClass {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &CohClass) -> CohClass {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &CohClass) -> CohClass {
        self.zip(o, |a, b| a * b)
    }

    /// Multiply by a polynomial in `z` (the `ℂ[z]⁺`-module structure).
    pub fn mul_z(&self, p: &MPoly) -> CohClass {
        CohClass {
            lambda: self.lambda.clone(),
            restr: self.restr.iter().map(|(i, q)| (i.clone(), q * p)).collect(),
            rep: self.rep.as_ref().map(|q| q * p),
        }
    }

    /// Evaluate all restrictions at a point `z`.
    pub fn eval_at(&self, z: &[Rat]) -> BTreeMap<Decomposition, Rat> {
        self.restr
            .iter()
            .map(|(i, p)| (i.clone(), eval_z(p, z)))
            .collect()
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.rep {
            return write!(f, "[{r}] in H{}", self.lambda);
        }
        let parts: Vec<String> = self.restr.iter().map(|(i, p)| format!("{i}: {p}")).collect();
        write!(f, "H{} {{{}}}", self.lambda, parts.join(", "))
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Evaluate a polynomial in `z` at `z_s = z[s-1]`; it must not involve
/// other variables.
pub fn eval_z(p: &MPoly, z: &[Rat]) -> Rat {
    let v = p.eval(|v| match v {
        Var::Z(s) => Some(z[s as usize - 1].clone()),
        _ => None,
    });
    debug_assert!(v.is_constant(), "leftover variables in {v}");
    v.constant_term()
}

/// Localization: `∫ x = Σ_I x_I / R(z_{I_1}|…|z_{I_N})`.
pub fn integrate(x: &CohClass) -> Result<MPoly> {
    let mut sum = LinearFractionSum::new();
    for (i, p) in &x.restr {
        sum.push(p.clone(), i.resultant_pairs());
    }
    sum.finish()
}

/// `D / R(z_{I_1}|…|z_{I_N})`, a signed product over pairs inside blocks.
pub fn d_over_r(i: &Decomposition) -> MPoly {
    let n = i.n();
    let colors = i.colors();
    let mut sign = 1i64;
    let mut p = MPoly::one();
    for a in 0..n {
        for b in a + 1..n {
            if colors[a] == colors[b] {
                p = &p * &(&MPoly::z(b + 1) - &MPoly::z(a + 1));
            } else if colors[a] > colors[b] {
                // R contributes z_a − z_b where D has z_b − z_a
                sign = -sign;
            }
        }
    }
    if sign < 0 {
        -p
    } else {
        p
    }
}

/// `i⁺(x) = Σ_I v_I ⊗ x_I`.
pub fn i_plus(x: &CohClass) -> VElement {
    let mut v = VElement::zero(x.lambda.n(), x.lambda.len());
    for (i, p) in &x.restr {
        v.add_term(i.clone(), p);
    }
    v
}

/// `i⁻(x) = Σ_I v_I ⊗ x_I / R(I)`, written over the global denominator `D`.
pub fn i_minus(x: &CohClass) -> FracVElement {
    let mut v = VElement::zero(x.lambda.n(), x.lambda.len());
    for (i, p) in &x.restr {
        v.add_term(i.clone(), &(p * &d_over_r(i)));
    }
    FracVElement::new(v)
}

/// Inverse of `i⁺` on its image.
pub fn i_plus_inverse(lambda: &Weight, v: &VElement) -> Result<CohClass> {
    let restr = enumerate_decompositions(lambda)
        .into_iter()
        .map(|i| {
            let c = v.coeff(&i);
            (i, c)
        })
        .collect();
    CohClass::from_restrictions(lambda, restr)
}

/// Inverse of `i⁻` on its image.
pub fn i_minus_inverse(lambda: &Weight, v: &FracVElement) -> Result<CohClass> {
    let mut restr = BTreeMap::new();
    for i in enumerate_decompositions(lambda) {
        let num = v.num.coeff(&i);
        let q = num
            .div_exact(&d_over_r(&i))
            .ok_or_else(|| Error::Consistency(format!("coefficient at {i} is not divisible by D/R")))?;
        restr.insert(i, q);
    }
    CohClass::from_restrictions(lambda, restr)
}

/// Multiplication by `Σ_j γ_{ij}^r`.
pub fn xi_action(i: usize, r: u32, x: &CohClass) -> Result<CohClass> {
    if i == 0 || i > x.lambda.len() {
        return arg(format!("block index {i} out of range for {}", x.lambda));
    }
    let restr = x
        .restr
        .iter()
        .map(|(dec, p)| {
            let block: Vec<Var> = dec.block(i).into_iter().map(|s| Var::Z(s as u8)).collect();
            (dec.clone(), p * &power_sum(r, &block))
        })
        .collect();
    let rep = x
        .rep
        .as_ref()
        .map(|h| h * &power_sum(r, &gamma_vars(&x.lambda, i)));
    Ok(CohClass {
        lambda: x.lambda.clone(),
        restr,
        rep,
    })
}

/// Generators `e_s(all γ) − σ_s(z)` of the defining relations of `H_λ`.
pub fn relation_generators(lambda: &Weight) -> Vec<MPoly> {
    let gammas: Vec<Var> = (1..=lambda.len()).flat_map(|i| gamma_vars(lambda, i)).collect();
    let zs: Vec<Var> = (1..=lambda.n()).map(|s| Var::Z(s as u8)).collect();
    (1..=lambda.n())
        .map(|s| &elementary_or_one(s, &gammas) - &elementary_or_one(s, &zs))
        .collect()
}

/// A free `ℂ[z]⁺`-basis of `H_λ`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub lambda: Weight,
    pub classes: Vec<CohClass>,
    /// Set when the primary Schur construction failed its checks.
    pub fallback: bool,
}

/// Products `∏_i s_{μ^{(i)}}(Γ_i)` with `μ^{(i)}` inside the
/// `λ_i × (λ_{i+1} + … + λ_N)` rectangle.
pub fn schur_basis(lambda: &Weight) -> Result<Vec<CohClass>> {
    let nb = lambda.len();
    let mut reps = vec![MPoly::one()];
    for i in 1..nb {
        let rest: usize = lambda.parts()[i..].iter().sum();
        let vars = gamma_vars(lambda, i);
        let mut next = Vec::new();
        for r in &reps {
            for mu in partitions_in_box(lambda.part(i), rest) {
                next.push(r * &schur(&mu, &vars)?);
            }
        }
        reps = next;
    }
    reps.iter().map(|h| CohClass::from_rep(lambda, h)).collect()
}

/// Checks a candidate basis: exact rank `d_λ` of the restriction matrix at
/// a generic point and linear independence modulo `J`. The second property
/// together with the count `d_λ` makes the family a free basis.
pub fn check_basis(lambda: &Weight, classes: &[CohClass], seed: u64) -> Result<()> {
    let d = lambda.dim();
    if classes.len() != d {
        return consistency(format!("{} classes for rank {d}", classes.len()));
    }
    let z = generic_point(lambda.n(), seed);
    let decs = enumerate_decompositions(lambda);
    let m: Vec<Vec<Rat>> = classes
        .iter()
        .map(|c| decs.iter().map(|i| eval_z(c.restriction(i), &z)).collect())
        .collect();
    let r = rank(&m);
    if r != d {
        return consistency(format!("restriction matrix has rank {r} < {d} at {lambda}"));
    }
    let r = quotient_rank(lambda, classes)?;
    if r != d {
        return consistency(format!("classes span only {r} of {d} dimensions modulo J at {lambda}"));
    }
    Ok(())
}

/// Rank of the images of `classes` in `H_λ / J_H`.
pub fn quotient_rank(lambda: &Weight, classes: &[CohClass]) -> Result<usize> {
    let q = GradedQuotient::new(Space::Plus, lambda);
    let std = Decomposition::standard(lambda);
    let mut rows = Vec::new();
    for c in classes {
        let p = c.restriction(&std);
        let mut row = Vec::new();
        for kk in q.degrees().collect::<Vec<_>>() {
            row.extend(q.coords(&p.homogeneous_part(kk as u32), kk)?);
        }
        rows.push(row);
    }
    Ok(rank(&rows))
}

/// Module basis of `H_λ`: the Schur-product basis, or, if it fails the
/// checks, representatives of `H_λ/J_H` read off the graded quotient.
pub fn module_basis(lambda: &Weight) -> Result<ModuleBasis> {
    let primary = schur_basis(lambda)?;
    if check_basis(lambda, &primary, 0x5eed).is_ok() {
        return Ok(ModuleBasis {
            lambda: lambda.clone(),
            classes: primary,
            fallback: false,
        });
    }
    let classes = echelon_basis(lambda)?;
    check_basis(lambda, &classes, 0x5eed)?;
    Ok(ModuleBasis {
        lambda: lambda.clone(),
        classes,
        fallback: true,
    })
}

/// Quotient representatives turned into Chern-root representatives.
pub fn echelon_basis(lambda: &Weight) -> Result<Vec<CohClass>> {
    let q = GradedQuotient::new(Space::Plus, lambda);
    let std = Decomposition::standard(lambda);
    let mut slot_to_gamma = BTreeMap::new();
    for j in 1..=lambda.len() {
        for (k, s) in std.block(j).into_iter().enumerate() {
            slot_to_gamma.insert(s, Var::G(j as u8, k as u8 + 1));
        }
    }
    q.all_reps()
        .into_iter()
        .map(|(_, p)| {
            let h = p.rename(|v| match v {
                Var::Z(s) => slot_to_gamma[&(s as usize)],
                other => other,
            });
            CohClass::from_rep(lambda, &h)
        })
        .collect()
}

/// Rank of the Poincaré pairing `(b_k, b_l) ↦ ∫ b_k b_l mod J_H`.
pub fn poincare_rank(basis: &ModuleBasis) -> Result<usize> {
    let m: Vec<Vec<Rat>> = basis
        .classes
        .iter()
        .map(|a| {
            basis
                .classes
                .iter()
                .map(|b| integrate(&a.mul(b)).map(|p| p.constant_term()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rank(&m))
}

/// A Laurent polynomial in `q` with integer coefficients.
pub type Laurent = BTreeMap<i64, i64>;

/// `(q)_n ∏_{i<j} (1 − q^{λ_i − λ_j + j − i}) / ∏_i (q)_{λ_i + N − i}`,
/// as an integer polynomial in `q`.
pub fn character_polynomial(lambda: &Weight) -> Result<Vec<i64>> {
    if !lambda.is_dominant() {
        return arg(format!("{lambda} is not dominant"));
    }
    let nb = lambda.len();
    let l = lambda.parts();
    let mut num = qpoch(lambda.n());
    for i in 0..nb {
        for j in i + 1..nb {
            num = poly_mul(&num, &one_minus_q_pow(l[i] - l[j] + j - i));
        }
    }
    let mut den = vec![1i64];
    for (i, &li) in l.iter().enumerate() {
        den = poly_mul(&den, &qpoch(li + nb - 1 - i));
    }
    let quot = poly_div_exact(&num, &den)
        .ok_or_else(|| Error::Verification(format!("character formula at {lambda} is not a polynomial")))?;
    if quot.iter().any(|&c| c < 0) {
        return Err(Error::Verification(format!(
            "character formula at {lambda} has a negative coefficient"
        )));
    }
    Ok(quot)
}

fn shifted(p: &[i64], shift: i64) -> Laurent {
    p.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k as i64 + shift, c))
        .collect()
}

fn weighted_shift(lambda: &Weight) -> i64 {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &li)| (i * li) as i64)
        .sum()
}

/// The closed formula `P_λ(q) · q^{−Σ (i−1) λ_i}` for the graded character
/// of `((1/D) 𝕍⁻ / J⁻)^sing_λ`, with `P_λ` from [`character_polynomial`].
pub fn graded_character_formula(lambda: &Weight) -> Result<Laurent> {
    Ok(shifted(&character_polynomial(lambda)?, -weighted_shift(lambda)))
}

/// `P_λ(q) · q^{Σ (i−1) λ_i}`, the graded character of `(𝕍⁺ / J⁺)^sing_λ`.
pub fn weyl_character_formula(lambda: &Weight) -> Result<Laurent> {
    Ok(shifted(&character_polynomial(lambda)?, weighted_shift(lambda)))
}

/// `q ↦ q⁻¹`.
pub fn invert_q(ch: &Laurent) -> Laurent {
    ch.iter().map(|(&k, &c)| (-k, c)).collect()
}

fn qpoch(a: usize) -> Vec<i64> {
    (1..=a).fold(vec![1], |acc, j| poly_mul(&acc, &one_minus_q_pow(j)))
}

fn one_minus_q_pow(j: usize) -> Vec<i64> {
    let mut p = vec![0; j + 1];
    p[0] = 1;
    p[j] -= 1;
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials whose divisor has constant term ±1.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let d0 = den[0];
    if d0.abs() != 1 {
        return None;
    }
    let mut rem = num.to_vec();
    let qlen = num.len().checked_sub(den.len())? + 1;
    let mut q = vec![0; qlen];
    for k in 0..qlen {
        let c = rem[k] * d0;
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(q)
}

/// `D` for the weight's `n`.
pub fn vandermonde_d(lambda: &Weight) -> MPoly {
    global_denominator(lambda.n())
}

/// Relations restrict to zero at every fixed point, and the restriction
/// matrix of the module basis (the coefficients of its `i±` images) has
/// rank `d_λ` over `ℂ(z)`. Rank at one point with distinct coordinates is
/// a lower bound for the generic rank, so a full rank there is exact.
pub fn relation_check(lambda: &Weight) -> Result<usize> {
    for h in relation_generators(lambda) {
        let c = CohClass::from_rep(lambda, &h)?;
        let bad = c.restrictions().find(|(_, p)| !p.is_zero()).map(|(i, p)| format!("{p} at {i}"));
        if let Some(at) = bad {
            return Err(Error::Verification(format!("relation {h} restricts to {at}")));
        }
    }
    let basis = module_basis(lambda)?;
    let z = generic_point(lambda.n(), 0x5eed);
    let decs = enumerate_decompositions(lambda);
    for (name, twist) in [("i+", false), ("i-", true)] {
        let m: Vec<Vec<Rat>> = basis
            .classes
            .iter()
            .map(|c| {
                decs.iter()
                    .map(|i| {
                        let p = if twist { c.restriction(i) * &d_over_r(i) } else { c.restriction(i).clone() };
                        eval_z(&p, &z)
                    })
                    .collect()
            })
            .collect();
        let r = rank(&m);
        if r != lambda.dim() {
            return Err(Error::Verification(format!("{name} image of the basis has rank {r} < {}", lambda.dim())));
        }
    }
    Ok(lambda.dim())
}

/// Localization of every product of two basis classes is a polynomial.
pub fn integrate_check(lambda: &Weight) -> Result<usize> {
    let basis = module_basis(lambda)?;
    let mut count = 0;
    for a in &basis.classes {
        for b in &basis.classes {
            integrate(&a.mul(b)).map_err(|e| Error::Verification(format!("∫ {a}·{b}: {e}")))?;
            count += 1;
        }
    }
    Ok(count)
}

/// `i± ∘ (Σ_k γ_{ik}^r ·) = (e_{ii} ⊗ t^r) ∘ i±` on the module basis.
pub fn xi_intertwining_check(lambda: &Weight, rmax: u32) -> Result<usize> {
    let basis = module_basis(lambda)?;
    let mut count = 0;
    for x in &basis.classes {
        for i in 1..=lambda.len() {
            for r in 0..=rmax {
                let y = xi_action(i, r, x)?;
                if i_plus(&y) != i_plus(x).act_generator(i, i, r) {
                    return Err(Error::Verification(format!("i+ fails for e{i}{i}[t^{r}] on {x}")));
                }
                if i_minus(&y) != i_minus(x).act_generator(i, i, r) {
                    return Err(Error::Verification(format!("i- fails for e{i}{i}[t^{r}] on {x}")));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The `ℬ^∞` element matching a class: its representative rewritten in the
/// power sums `p_r(Γ_i)`, each replaced by `e_{ii} ⊗ t^r`.
pub fn binfty_element(x: &CohClass) -> Result<UEAElement> {
    let h = x
        .rep()
        .ok_or_else(|| Error::Argument(format!("{x} has no representative")))?;
    let blocks: Vec<(u8, Vec<Var>)> = (1..=x.lambda.len()).map(|i| (i as u8, gamma_vars(&x.lambda, i))).collect();
    let p = block_symmetric_to_power_sums(h, &blocks)?;
    let mut grouped: BTreeMap<Vec<Gen>, MPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut word = Vec::new();
        let mut coef = Vec::new();
        for &(v, e) in m.pairs() {
            match v {
                Var::P(i, r) => word.extend(std::iter::repeat_n(Gen { a: i, b: i, r: r as u32 }, e as usize)),
                other => coef.push((other, e)),
            }
        }
        word.sort();
        let term = MPoly::term(Monomial::from_pairs(coef), c.clone());
        grouped.entry(word).or_default().add_assign_ref(&term);
    }
    let mut out = UEAElement::default();
    for (w, c) in grouped {
        out.add_term(w, &c);
    }
    Ok(out)
}

/// Regular representation: for every pair of basis classes,
/// `i±(b_k b_l) = Φ(b_k) i±(b_l)` with `Φ` from [`binfty_element`]. So the
/// matrix of multiplication by `b_k` in the basis `{b_l}` is the matrix of
/// `Φ(b_k)` in the transported basis `{i±(b_l)}`.
pub fn regular_representation_check(lambda: &Weight) -> Result<usize> {
    let basis = module_basis(lambda)?;
    let mut count = 0;
    for a in &basis.classes {
        let phi = binfty_element(a)?;
        for b in &basis.classes {
            let ab = a.mul(b);
            if apply_uea(&phi, &i_plus(b)) != i_plus(&ab) {
                return Err(Error::Verification(format!("i+: {phi} on {b} is not multiplication by {a}")));
            }
            if apply_uea_frac(&phi, &i_minus(b)) != i_minus(&ab) {
                return Err(Error::Verification(format!("i-: {phi} on {b} is not multiplication by {a}")));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `𝒮₊₋(i⁺ h, i⁻ g) = ∫ h g` on all pairs of basis classes.
pub fn pairing_check(lambda: &Weight) -> Result<usize> {
    let basis = module_basis(lambda)?;
    let mut count = 0;
    for h in &basis.classes {
        for g in &basis.classes {
            let lhs = shapovalov_pm(&i_plus(h), &i_minus(g))?;
            let rhs = integrate(&h.mul(g))?;
            if lhs != rhs {
                return Err(Error::Verification(format!("S+-({h}, {g}) = {lhs} but the integral is {rhs}")));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Rank of the `𝒮₊₋` pairing on the graded quotients, summed over all
/// weights with `|λ| = n`; it must be `N^n`.
pub fn nondegeneracy_check(n_big: usize, n: usize) -> Result<usize> {
    let mut total = 0;
    for lambda in Weight::all(n_big, n) {
        let m = pairing_matrix(&lambda)?;
        let r = rank(&m);
        if r != lambda.dim() {
            return Err(Error::Verification(format!("pairing at {lambda} has rank {r} < {}", lambda.dim())));
        }
        total += r;
    }
    let expect = n_big.pow(n as u32);
    if total != expect {
        return Err(Error::Verification(format!("total rank {total} differs from N^n = {expect}")));
    }
    Ok(total)
}

/// Kernel-computed graded character of `((1/D)𝕍⁻/J⁻)^sing_λ` against
/// [`graded_character_formula`]. The error carries both characters and
/// the `q ↦ q⁻¹` image of [`weyl_character_formula`].
pub fn graded_character_check(lambda: &Weight) -> Result<Laurent> {
    let computed: Laurent = singular_character(Space::MinusOverD, lambda)?
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .map(|(k, d)| (k, d as i64))
        .collect();
    let formula = graded_character_formula(lambda)?;
    if computed != formula {
        let dual = invert_q(&weyl_character_formula(lambda)?);
        return Err(Error::Verification(format!(
            "at {lambda}: kernel gives {}, formula gives {}, dual Weyl formula gives {}",
            show_laurent(&computed),
            show_laurent(&formula),
            show_laurent(&dual)
        )));
    }
    Ok(computed)
}

/// `q^-2 + q^-1`-style rendering.
pub fn show_laurent(ch: &Laurent) -> String {
    if ch.is_empty() {
        return "0".into();
    }
    ch.iter()
        .rev()
        .map(|(&k, &c)| {
            let mon = match k {
                0 => "1".to_string(),
                1 => "q".to_string(),
                k => format!("q^{k}"),
            };
            if c == 1 {
                mon
            } else {
                format!("{c}{mon}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::product_of_differences;
    use crate::series::Ring;

    fn w(p: &[usize]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    fn g(i: u8, k: u8) -> MPoly {
        MPoly::var(Var::G(i, k))
    }

    #[test]
    fn restrict_examples() {
        let lam = w(&[1, 1]);
        let i = Decomposition::from_blocks(&[vec![1], vec![2]]).unwrap();
        assert_eq!(restrict(&MPoly::one(), &i, &lam).unwrap(), MPoly::one());
        assert_eq!(restrict(&g(1, 1), &i, &lam).unwrap(), MPoly::z(1));
        assert!(restrict(&g(1, 2), &i, &lam).is_err());
        for lam in Weight::all(3, 3) {
            for h in relation_generators(&lam) {
                let c = CohClass::from_rep(&lam, &h).unwrap();
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn integrate_examples() {
        let lam = w(&[1, 1]);
        assert!(integrate(&CohClass::one(&lam)).unwrap().is_zero());
        let c = CohClass::from_rep(&lam, &g(1, 1)).unwrap();
        assert_eq!(integrate(&c).unwrap(), MPoly::int(-1));
        let pt = w(&[3]);
        let c = CohClass::from_rep(&pt, &MPoly::z(1)).unwrap();
        assert_eq!(integrate(&c).unwrap(), MPoly::z(1));
    }

    #[test]
    fn embeddings_small_case() {
        let lam = w(&[1, 1]);
        let one = CohClass::one(&lam);
        let a = Decomposition::from_blocks(&[vec![1], vec![2]]).unwrap();
        let b = Decomposition::from_blocks(&[vec![2], vec![1]]).unwrap();
        let mut plus = VElement::basis(&a, 2, MPoly::one());
        plus.add_term(b.clone(), &MPoly::one());
        assert_eq!(i_plus(&one), plus);
        let mut minus = VElement::basis(&a, 2, MPoly::one());
        minus.add_term(b, &MPoly::int(-1));
        assert_eq!(i_minus(&one).num, minus);
        let h = CohClass::from_rep(&lam, &g(1, 1)).unwrap();
        assert_eq!(shapovalov_pm(&i_plus(&h), &i_minus(&one)).unwrap(), MPoly::int(-1));
    }

    #[test]
    fn d_over_r_matches_division() {
        for lam in Weight::all(3, 4) {
            for i in enumerate_decompositions(&lam) {
                let r = product_of_differences(i.resultant_pairs());
                assert_eq!(&d_over_r(&i) * &r, vandermonde_d(&lam));
            }
        }
    }

    #[test]
    fn xi_examples() {
        let lam = w(&[1, 1]);
        let one = CohClass::one(&lam);
        let x = xi_action(1, 1, &one).unwrap();
        let a = Decomposition::from_blocks(&[vec![1], vec![2]]).unwrap();
        let b = Decomposition::from_blocks(&[vec![2], vec![1]]).unwrap();
        assert_eq!(x.restriction(&a), &MPoly::z(1));
        assert_eq!(x.restriction(&b), &MPoly::z(2));
        let y = xi_action(2, 0, &one).unwrap();
        assert_eq!(y, one);
        assert!(xi_action(3, 0, &one).is_err());
    }

    #[test]
    fn bases_have_rank_d() {
        let b = module_basis(&w(&[3])).unwrap();
        assert_eq!(b.classes.len(), 1);
        let b = module_basis(&w(&[1, 1])).unwrap();
        assert_eq!(b.classes[0].rep(), Some(&MPoly::one()));
        assert_eq!(b.classes[1].rep(), Some(&g(1, 1)));
        assert_eq!(poincare_rank(&b).unwrap(), 2);
        for lam in Weight::all(3, 3) {
            let b = module_basis(&lam).unwrap();
            assert!(!b.fallback, "{lam}");
            assert_eq!(b.classes.len(), lam.dim());
        }
    }

    #[test]
    fn character_formula_examples() {
        assert_eq!(graded_character_formula(&w(&[1, 1])).unwrap(), [(-1, 1)].into_iter().collect());
        assert_eq!(graded_character_formula(&w(&[4])).unwrap(), [(0, 1)].into_iter().collect());
        assert!(graded_character_formula(&w(&[1, 2])).is_err());
    }

    #[test]
    fn pairing_is_integral() {
        for lam in Weight::all(3, 3) {
            let b = module_basis(&lam).unwrap();
            for h in &b.classes {
                for g in &b.classes {
                    let lhs = shapovalov_pm(&i_plus(h), &i_minus(g)).unwrap();
                    assert_eq!(lhs, integrate(&h.mul(g)).unwrap(), "{lam}");
                }
            }
        }
    }

    #[test]
    fn xi_matches_cartan_action() {
        let lam = w(&[2, 1]);
        let b = module_basis(&lam).unwrap();
        for x in &b.classes {
            for i in 1..=2 {
                for r in 0..3 {
                    let y = xi_action(i, r, x).unwrap();
                    assert_eq!(i_plus(&y), i_plus(x).act_generator(i, i, r));
                    assert_eq!(i_minus(&y), i_minus(x).act_generator(i, i, r));
                }
            }
        }
    }

    #[test]
    fn embeddings_invert() {
        let lam = w(&[1, 2]);
        for x in module_basis(&lam).unwrap().classes {
            let back = i_plus_inverse(&lam, &i_plus(&x)).unwrap();
            assert_eq!(back.restrictions().collect::<Vec<_>>(), x.restrictions().collect::<Vec<_>>());
            let back = i_minus_inverse(&lam, &i_minus(&x)).unwrap();
            assert_eq!(back.restrictions().collect::<Vec<_>>(), x.restrictions().collect::<Vec<_>>());
        }
    }

    #[test]
    fn poincare_pairing_nondegenerate() {
        for lam in Weight::all(3, 3).into_iter().chain(Weight::all(2, 4)) {
            let b = module_basis(&lam).unwrap();
            assert_eq!(poincare_rank(&b).unwrap(), lam.dim(), "{lam}");
        }
    }

    #[test]
    fn character_formulas_against_kernels() {
        use crate::tensor::singular_character;
        let positive = |c: BTreeMap<i64, usize>| -> Laurent {
            c.into_iter().filter(|(_, d)| *d > 0).map(|(k, d)| (k, d as i64)).collect()
        };
        for lam in Weight::dominant(3, 4).into_iter().chain(Weight::dominant(2, 4)) {
            let plus = positive(singular_character(Space::Plus, &lam).unwrap());
            let minus = positive(singular_character(Space::MinusOverD, &lam).unwrap());
            let weyl = weyl_character_formula(&lam).unwrap();
            assert_eq!(plus, weyl, "{lam}");
            assert_eq!(minus, invert_q(&weyl), "{lam}");
            // the closed minus-side form agrees exactly when P_λ is a monomial
            let p = character_polynomial(&lam).unwrap();
            let monomial = p.iter().filter(|&&c| c != 0).count() == 1;
            assert_eq!(minus == graded_character_formula(&lam).unwrap(), monomial, "{lam}");
        }
    }

    #[test]
    fn public_checks_small() {
        for lam in Weight::all(2, 3) {
            assert_eq!(relation_check(&lam).unwrap(), lam.dim());
            integrate_check(&lam).unwrap();
            xi_intertwining_check(&lam, 2).unwrap();
            regular_representation_check(&lam).unwrap();
            pairing_check(&lam).unwrap();
        }
        assert_eq!(nondegeneracy_check(2, 3).unwrap(), 8);
        assert_eq!(graded_character_check(&w(&[1, 1])).unwrap(), [(-1, 1)].into_iter().collect());
        let err = graded_character_check(&w(&[2, 1])).unwrap_err().to_string();
        assert!(err.contains("q^-1 + q^-2"), "{err}");
    }

    #[test]
    fn binfty_element_of_gamma() {
        let lam = w(&[2, 1]);
        let x = CohClass::from_rep(&lam, &(&g(1, 1).pow(2) + &g(1, 2).pow(2))).unwrap();
        assert_eq!(binfty_element(&x).unwrap(), UEAElement::generator(1, 1, 2));
        // a one-variable block reads γ² as p_1²
        let x = CohClass::from_rep(&lam, &g(2, 1).pow(2)).unwrap();
        let e11 = UEAElement::generator(2, 2, 1);
        assert_eq!(binfty_element(&x).unwrap(), e11.mul(&e11));
    }
}
