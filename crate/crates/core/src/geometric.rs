//! Raising and lowering operators `ρ±(e_{a,a±1} ⊗ t^j)` on `⊕_λ H_λ`,
//! defined by pull-back to the two-step flag variety, twisting by an Euler
//! class and pushing forward along the fibre.
//!
//! The push-forward is evaluated by fixed-point localization over the
//! fibre. Bundles are never built: at a fixed point each one is just a set
//! of Chern roots.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{
    gamma_vars, i_minus, i_minus_inverse, i_plus, i_plus_inverse, module_basis, xi_action,
    CohClass,
};
use crate::error::{arg, Error, Result};
use crate::linalg::{kernel, SparseVec};
use crate::poly::symmetric::{elementary_or_one, vandermonde};
use crate::poly::{LinearFractionSum, MPoly, Var};
use crate::quasiexp::Sign;
use crate::tensor::{
    enumerate_decompositions, singular_character, Decomposition, GradedQuotient, Space, Weight,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `e_{a,a+1}`
    Raise,
    /// `e_{a+1,a}`
    Lower,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Raise => "raise",
            Direction::Lower => "lower",
        })
    }
}

impl Direction {
    /// `(row, column)` of the matrix unit.
    pub fn unit(self, a: usize) -> (usize, usize) {
        match self {
            Direction::Raise => (a, a + 1),
            Direction::Lower => (a + 1, a),
        }
    }
}

/// An element of `⊕_λ H_λ` with finitely many nonzero components.
#[derive(Clone, Debug, Default)]
pub struct CohFamily {
    parts: BTreeMap<Vec<usize>, CohClass>,
}

impl CohFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(x: CohClass) -> Self {
        let mut f = Self::new();
        f.insert(x);
        f
    }

    /// Add `x` to its component.
    pub fn insert(&mut self, x: CohClass) {
        let key = x.lambda.parts().to_vec();
        let sum = match self.parts.remove(&key) {
            Some(old) => old.add(&x),
            None => x,
        };
        if !sum.is_zero() {
            self.parts.insert(key, sum);
        }
    }

    pub fn component(&self, lambda: &Weight) -> Option<&CohClass> {
        self.parts.get(lambda.parts())
    }

    pub fn components(&self) -> impl Iterator<Item = &CohClass> {
        self.parts.values()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Apply a generator componentwise.
    pub fn act(&self, sign: Sign, dir: Direction, a: usize, j: u32) -> Result<CohFamily> {
        let mut out = CohFamily::new();
        for x in self.parts.values() {
            if let Some(y) = rho_generator(sign, dir, a, j, x)? {
                out.insert(y);
            }
        }
        Ok(out)
    }
}

/// Weight of the target variety, `None` when a component would go negative.
pub fn target_weight(lambda: &Weight, dir: Direction, a: usize) -> Result<Option<Weight>> {
    if a == 0 || a >= lambda.len() {
        return arg(format!("index a = {a} out of range for {lambda}"));
    }
    let (i, j) = dir.unit(a);
    Ok(lambda.shifted(i, j))
}

/// `∏_{x∈xs, y∈ys} (y − x)` in Chern-root variables.
fn root_resultant(xs: &[Var], ys: &[Var]) -> MPoly {
    let mut p = MPoly::one();
    for &x in xs {
        for &y in ys {
            p = &p * &(&MPoly::var(y) - &MPoly::var(x));
        }
    }
    p
}

/// `ρ±(e_{a,a+1} ⊗ t^j)` (raise) or `ρ±(e_{a+1,a} ⊗ t^j)` (lower) applied to
/// `x ∈ H_λ`. `None` means the target variety is empty, so the image is 0.
///
/// With `Δ_1, …, Δ_N` the Chern roots on the target, the image of
/// `[h(Γ_1, …, Γ_N)]` under raising is
///
/// `Σ_{δ∈Δ_a} h(…, Δ_a − δ, δ ∪ Δ_{a+1}, …) · E · δ^j / R(Δ_a − δ | δ)`
///
/// with `E = R(δ|Δ_{a+1})` for `ρ⁻` (the class `e(Hom(B′,C′))`) and
/// `E = R(Δ_a − δ|δ)` for `ρ⁺` (`e(Hom(A′,B′))`). Lowering sums over
/// `δ ∈ Δ_{a+1}` with `h(…, Δ_a ∪ δ, Δ_{a+1} − δ, …)`, denominator
/// `R(δ|Δ_{a+1} − δ)`, and `E = R(Δ_a|δ)` for `ρ⁻`, `E = R(δ|Δ_{a+1} − δ)`
/// for `ρ⁺`.
///
/// Classes without a representative go through the fixed-point formula
/// [`rho_localized`].
pub fn rho_generator(sign: Sign, dir: Direction, a: usize, j: u32, x: &CohClass) -> Result<Option<CohClass>> {
    let lambda = &x.lambda;
    let Some(mu) = target_weight(lambda, dir, a)? else {
        return Ok(None);
    };
    let Some(h) = x.rep() else {
        return rho_localized(sign, dir, a, j, x).map(Some);
    };
    // δ runs over the fibre block of the target
    let fibre_block = match dir {
        Direction::Raise => a,
        Direction::Lower => a + 1,
    };
    let fibre = gamma_vars(&mu, fibre_block);
    let da = gamma_vars(&mu, a);
    let db = gamma_vars(&mu, a + 1);
    let vdm = vandermonde(&fibre);
    let mut total = MPoly::zero();
    for (m, &delta) in fibre.iter().enumerate() {
        let rest: Vec<Var> = fibre.iter().enumerate().filter(|&(k, _)| k != m).map(|(_, &v)| v).collect();
        let (new_a, new_b): (Vec<Var>, Vec<Var>) = match dir {
            Direction::Raise => (rest.clone(), std::iter::once(delta).chain(db.iter().copied()).collect()),
            Direction::Lower => (da.iter().copied().chain(std::iter::once(delta)).collect(), rest.clone()),
        };
        let moved = h.substitute(|v| match v {
            Var::G(b, k) if b as usize == a => Some(MPoly::var(new_a[k as usize - 1])),
            Var::G(b, k) if b as usize == a + 1 => Some(MPoly::var(new_b[k as usize - 1])),
            Var::G(b, k) => Some(MPoly::var(Var::G(b, k))),
            _ => None,
        });
        let tangent = match dir {
            Direction::Raise => root_resultant(&rest, &[delta]),
            Direction::Lower => root_resultant(&[delta], &rest),
        };
        let euler = match (sign, dir) {
            (Sign::Minus, Direction::Raise) => root_resultant(&[delta], &db),
            (Sign::Minus, Direction::Lower) => root_resultant(&da, &[delta]),
            (Sign::Plus, _) => tangent.clone(),
        };
        let cofactor = vdm
            .div_exact(&tangent)
            .ok_or_else(|| Error::Consistency("fibre Euler class does not divide the Vandermonde".into()))?;
        let term = &(&moved * &euler) * &(&MPoly::var(delta).pow(j) * &cofactor);
        total.add_assign_ref(&term);
    }
    let image = total
        .div_exact(&vdm)
        .ok_or_else(|| Error::Consistency(format!("push-forward of {h} is not a polynomial")))?;
    CohClass::from_rep(&mu, &image).map(Some)
}

/// The same operator computed on restrictions: the value at a fixed point
/// `K` of the target is a sum over the transferred slot `i` of the input
/// restriction at the neighbouring fixed point, times `z_i^j` and the ratio
/// of Euler classes.
pub fn rho_localized(sign: Sign, dir: Direction, a: usize, j: u32, x: &CohClass) -> Result<CohClass> {
    let lambda = &x.lambda;
    let Some(mu) = target_weight(lambda, dir, a)? else {
        return arg(format!("{dir} at a = {a} leaves the weights with |λ| = {}", lambda.n()));
    };
    let (from, to) = match dir {
        Direction::Raise => (a, a + 1),
        Direction::Lower => (a + 1, a),
    };
    let mut restr = BTreeMap::new();
    for k in enumerate_decompositions(&mu) {
        let mut sum = LinearFractionSum::new();
        let ka = k.block(a);
        let kb = k.block(a + 1);
        for i in k.block(from) {
            let mut colors = k.colors().to_vec();
            colors[i - 1] = (to - 1) as u8;
            let src = Decomposition::from_colors(colors);
            let mut num = x.restriction(&src) * &MPoly::z(i).pow(j);
            let mut den = Vec::new();
            if sign == Sign::Minus {
                match dir {
                    Direction::Raise => {
                        for &c in &kb {
                            num = &num * &(&MPoly::z(c) - &MPoly::z(i));
                        }
                        den.extend(ka.iter().filter(|&&s| s != i).map(|&s| (i, s)));
                    }
                    Direction::Lower => {
                        for &s in &ka {
                            num = &num * &(&MPoly::z(i) - &MPoly::z(s));
                        }
                        den.extend(kb.iter().filter(|&&s| s != i).map(|&s| (s, i)));
                    }
                }
            }
            sum.push(num, den);
        }
        restr.insert(k, sum.finish()?);
    }
    CohClass::from_restrictions(&mu, restr)
}

/// `(i±)⁻¹ ∘ (e ⊗ t^j) ∘ i±`, the action transported from the tensor module.
pub fn conjugated_action(sign: Sign, dir: Direction, a: usize, j: u32, x: &CohClass) -> Result<Option<CohClass>> {
    let Some(mu) = target_weight(&x.lambda, dir, a)? else {
        return Ok(None);
    };
    let (r, c) = dir.unit(a);
    match sign {
        Sign::Plus => i_plus_inverse(&mu, &i_plus(x).act_generator(r, c, j)).map(Some),
        Sign::Minus => i_minus_inverse(&mu, &i_minus(x).act_generator(r, c, j)).map(Some),
    }
}

/// Result of a diagram check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub sign: String,
    pub direction: Direction,
    pub a: usize,
    pub j: u32,
    pub lambda: Vec<usize>,
    /// Number of basis classes compared.
    pub classes: usize,
    /// `false` when the target variety is empty (both sides are zero).
    pub nonempty_target: bool,
}

fn mismatch(what: &str, x: &CohClass, lhs: &CohClass, rhs: &CohClass) -> Error {
    let at = lhs
        .restrictions()
        .find(|(k, p)| *p != rhs.restriction(k))
        .map(|(k, _)| k.to_string())
        .unwrap_or_else(|| "?".into());
    Error::Verification(format!("{what} fails on {x} at fixed point {at}: {lhs} vs {rhs}"))
}

/// `i± ∘ ρ±(g) = g ∘ i±` on the module basis of `H_λ`, for
/// `g = e_{a,a±1} ⊗ t^j`. The fixed-point formula is compared as well.
pub fn diagram_check(sign: Sign, dir: Direction, a: usize, j: u32, lambda: &Weight) -> Result<DiagramReport> {
    let target = target_weight(lambda, dir, a)?;
    let basis = module_basis(lambda)?;
    for x in &basis.classes {
        let geo = rho_generator(sign, dir, a, j, x)?;
        let conj = conjugated_action(sign, dir, a, j, x)?;
        match (geo, conj) {
            (None, None) => {}
            (Some(g), Some(c)) => {
                if g.restrictions().ne(c.restrictions()) {
                    return Err(mismatch("diagram", x, &g, &c));
                }
                let l = rho_localized(sign, dir, a, j, x)?;
                if l.restrictions().ne(g.restrictions()) {
                    return Err(mismatch("fixed-point formula", x, &l, &g));
                }
            }
            _ => return Err(Error::Consistency("target weight disagrees between sides".into())),
        }
    }
    Ok(DiagramReport {
        sign: sign.to_string(),
        direction: dir,
        a,
        j,
        lambda: lambda.parts().to_vec(),
        classes: basis.classes.len(),
        nonempty_target: target.is_some(),
    })
}

/// Coordinates of a class in `H_λ / J_H`, read off its restriction at the
/// standard fixed point.
pub fn quotient_coords(q: &GradedQuotient, x: &CohClass) -> Result<Vec<crate::Rat>> {
    let std = Decomposition::standard(&x.lambda);
    let p = x.restriction(&std);
    let mut out = Vec::new();
    for kk in q.degrees().collect::<Vec<_>>() {
        out.extend(q.coords(&p.homogeneous_part(kk as u32), kk)?);
    }
    Ok(out)
}

/// Descent to `H(ℂ) = H / J_H`: `ρ±` commutes with multiplication by every
/// `σ_s(z)`, so it preserves `J_H`, and the images of basis classes agree
/// with the conjugated action modulo `J_H`.
pub fn descent_check(sign: Sign, dir: Direction, a: usize, j: u32, lambda: &Weight) -> Result<usize> {
    let Some(mu) = target_weight(lambda, dir, a)? else {
        return Ok(0);
    };
    let q = GradedQuotient::new(Space::Plus, &mu);
    let zs: Vec<Var> = (1..=lambda.n()).map(|s| Var::Z(s as u8)).collect();
    let basis = module_basis(lambda)?;
    let mut checked = 0;
    for x in &basis.classes {
        let y = rho_generator(sign, dir, a, j, x)?.expect("nonempty target");
        for s in 1..=lambda.n() {
            let e = elementary_or_one(s, &zs);
            let lhs = rho_generator(sign, dir, a, j, &x.mul_z(&e))?.expect("nonempty target");
            let rhs = y.mul_z(&e);
            if lhs.restrictions().ne(rhs.restrictions()) {
                return Err(mismatch(&format!("linearity over σ_{s}(z)"), x, &lhs, &rhs));
            }
        }
        let c = conjugated_action(sign, dir, a, j, x)?.expect("nonempty target");
        if quotient_coords(&q, &y)? != quotient_coords(&q, &c)? {
            return Err(mismatch("descended diagram", x, &y, &c));
        }
        checked += 1;
    }
    Ok(checked)
}

/// `[ρ(e_{a,a+1}⊗t^r), ρ(e_{a+1,a}⊗t^p)] = ρ(e_{aa}⊗t^{r+p}) − ρ(e_{a+1,a+1}⊗t^{r+p})`
/// on the basis of `H_λ`, with the diagonal part acting by `Σ_k γ_{ak}^{r+p}`.
pub fn serre_check(sign: Sign, a: usize, r: u32, p: u32, lambda: &Weight) -> Result<usize> {
    let basis = module_basis(lambda)?;
    let apply = |dir, j, x: &CohClass| -> Result<Option<CohClass>> { rho_generator(sign, dir, a, j, x) };
    for x in &basis.classes {
        let mut lhs = CohClass::zero(lambda);
        if let Some(y) = apply(Direction::Lower, p, x)? {
            if let Some(w) = apply(Direction::Raise, r, &y)? {
                lhs = lhs.add(&w);
            }
        }
        if let Some(y) = apply(Direction::Raise, r, x)? {
            if let Some(w) = apply(Direction::Lower, p, &y)? {
                lhs = lhs.sub(&w);
            }
        }
        let rhs = xi_action(a, r + p, x)?.sub(&xi_action(a + 1, r + p, x)?);
        if lhs.restrictions().ne(rhs.restrictions()) {
            return Err(mismatch("commutator relation", x, &lhs, &rhs));
        }
    }
    Ok(basis.classes.len())
}

/// Graded character of the subspace of `H_λ / J_H` killed by every
/// `ρ⁻(e_{a,a+1} ⊗ t⁰)`, shifted by `−dim F_λ` so that it is comparable with
/// the singular part of `((1/D)𝕍⁻/J⁻)_λ`.
pub fn rho_singular_character(lambda: &Weight) -> Result<BTreeMap<i64, usize>> {
    if !lambda.is_dominant() {
        return arg(format!("{lambda} is not dominant"));
    }
    let q = GradedQuotient::new(Space::Plus, lambda);
    let reps = crate::cohomology::echelon_basis(lambda)?;
    let targets: Vec<(usize, GradedQuotient)> = (1..lambda.len())
        .filter_map(|a| lambda.shifted(a, a + 1).map(|w| (a, GradedQuotient::new(Space::Plus, &w))))
        .collect();
    let shift = lambda.flag_dim() as i64;
    let mut out = BTreeMap::new();
    let mut offset = 0;
    for kk in q.degrees().collect::<Vec<_>>() {
        let count = q.reps(kk).len();
        let level = &reps[offset..offset + count];
        offset += count;
        if level.is_empty() {
            continue;
        }
        let mut images: Vec<SparseVec<(usize, usize)>> = Vec::new();
        for x in level {
            let mut v = SparseVec::new();
            for (a, tq) in targets.iter() {
                let y = rho_generator(Sign::Minus, Direction::Raise, *a, 0, x)?.expect("dominant shift");
                for (r, c) in quotient_coords(tq, &y)?.into_iter().enumerate() {
                    if !c.is_zero() {
                        v.insert((*a, r), c);
                    }
                }
            }
            images.push(v);
        }
        let dim = kernel(&images).len();
        if dim > 0 {
            out.insert(kk as i64 - shift, dim);
        }
    }
    Ok(out)
}

/// [`rho_singular_character`] against the kernel computation in the tensor
/// module.
pub fn rho_singular_check(lambda: &Weight) -> Result<BTreeMap<i64, usize>> {
    let geo = rho_singular_character(lambda)?;
    let tensor = singular_character(Space::MinusOverD, lambda)?;
    if geo != tensor {
        return Err(Error::Verification(format!(
            "ρ⁻-singular character {geo:?} differs from the tensor-module one {tensor:?} at {lambda}"
        )));
    }
    Ok(geo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn w(p: &[usize]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    #[test]
    fn raise_of_one_on_p1() {
        // ρ⁻(e12⊗t⁰)[1] on H_(1,1) lands in H_(2,0) = ℂ[z]^{S_2}: the sum
        // R(z_i|∅)/R(z_{K_1∖i}|z_i) over i ∈ {1,2} vanishes.
        let x = CohClass::one(&w(&[1, 1]));
        let y = rho_generator(Sign::Minus, Direction::Raise, 1, 0, &x).unwrap().unwrap();
        assert!(y.is_zero());
        let c = conjugated_action(Sign::Minus, Direction::Raise, 1, 0, &x).unwrap().unwrap();
        assert!(c.is_zero());
        // with t¹ the sum is (z_1 − z_2)/(z_1 − z_2) = 1
        let y = rho_generator(Sign::Minus, Direction::Raise, 1, 1, &x).unwrap().unwrap();
        assert_eq!(y.rep().unwrap(), &MPoly::one());
        // ρ⁺ has no Euler twist: [1] ↦ z_1^0 + z_2^0 = 2
        let y = rho_generator(Sign::Plus, Direction::Raise, 1, 0, &x).unwrap().unwrap();
        assert_eq!(y.rep().unwrap(), &MPoly::int(2));
    }

    #[test]
    fn negative_target_is_zero() {
        let x = CohClass::one(&w(&[2, 0]));
        assert!(rho_generator(Sign::Minus, Direction::Raise, 1, 0, &x).unwrap().is_none());
        assert!(rho_generator(Sign::Plus, Direction::Raise, 1, 3, &x).unwrap().is_none());
        assert!(conjugated_action(Sign::Plus, Direction::Raise, 1, 3, &x).unwrap().is_none());
        assert!(rho_generator(Sign::Minus, Direction::Raise, 2, 0, &x).is_err());
        let fam = CohFamily::single(x);
        assert!(fam.act(Sign::Minus, Direction::Raise, 1, 0).unwrap().is_zero());
    }

    #[test]
    fn diagrams_commute_n2() {
        for lam in Weight::all(2, 2) {
            for sign in [Sign::Plus, Sign::Minus] {
                for dir in [Direction::Raise, Direction::Lower] {
                    for j in 0..=2 {
                        diagram_check(sign, dir, 1, j, &lam).unwrap();
                        descent_check(sign, dir, 1, j, &lam).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn diagrams_commute_111() {
        let lam = w(&[1, 1, 1]);
        for sign in [Sign::Plus, Sign::Minus] {
            for dir in [Direction::Raise, Direction::Lower] {
                for a in 1..=2 {
                    diagram_check(sign, dir, a, 0, &lam).unwrap();
                }
            }
        }
    }

    #[test]
    fn fixed_point_formula_without_representative() {
        let lam = w(&[2, 1]);
        for x in module_basis(&lam).unwrap().classes {
            let bare = CohClass::from_restrictions(
                &lam,
                x.restrictions().map(|(k, p)| (k.clone(), p.clone())).collect(),
            )
            .unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                let a = rho_generator(sign, Direction::Lower, 1, 1, &x).unwrap().unwrap();
                let b = rho_generator(sign, Direction::Lower, 1, 1, &bare).unwrap().unwrap();
                assert!(a.restrictions().eq(b.restrictions()));
            }
        }
    }

    #[test]
    fn commutator_is_diagonal() {
        for lam in [w(&[1, 1]), w(&[2, 1]), w(&[1, 2])] {
            for sign in [Sign::Plus, Sign::Minus] {
                for (r, p) in [(0, 0), (1, 0), (0, 2), (1, 1)] {
                    serre_check(sign, 1, r, p, &lam).unwrap();
                }
            }
        }
        // at t⁰ the commutator is the scalar λ_1 − λ_2
        let lam = w(&[2, 1]);
        let x = CohClass::one(&lam);
        let y = xi_action(1, 0, &x).unwrap().sub(&xi_action(2, 0, &x).unwrap());
        assert!(y.restrictions().all(|(_, p)| p == &MPoly::int(1)));
    }

    #[test]
    fn family_accumulates() {
        let lam = w(&[1, 1]);
        let mut f = CohFamily::single(CohClass::one(&lam));
        f.insert(CohClass::one(&w(&[2, 0])));
        let g = f.act(Sign::Plus, Direction::Raise, 1, 0).unwrap();
        let top = g.component(&w(&[2, 0])).unwrap();
        assert_eq!(top.rep().unwrap(), &MPoly::int(2));
        assert_eq!(g.components().count(), 1);
        let _ = Rat::zero();
    }

    #[test]
    fn rho_minus_singular_character() {
        for lam in [w(&[1, 1]), w(&[2, 1]), w(&[3, 1]), w(&[2, 2]), w(&[1, 1, 1])] {
            rho_singular_check(&lam).unwrap();
        }
    }
}
