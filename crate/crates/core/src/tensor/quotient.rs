use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::element::{FracVElement, VElement};
use super::weight::{enumerate_decompositions, Decomposition, Weight};
use crate::combinat::{compositions, perm_sign};
use crate::error::{arg, consistency, Error, Result};
use crate::linalg::{kernel, unit_tag, Echelon, SparseVec, Tag};
use crate::poly::symmetric::{elementary_or_one, vandermonde};
use crate::poly::{MPoly, Monomial, Var};
use crate::rat::Rat;

/// Which of the two `S_n`-isotypic pieces is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Space {
    /// `𝕍⁺`, the invariants.
    Plus,
    /// `(1/D)𝕍⁻`, the anti-invariants over the Vandermonde product.
    MinusOverD,
}

/// Weight-`λ` part of `𝕍⁺` or `𝕍⁻` identified with polynomials through
/// the coefficient at the standard decomposition `I₀`.
///
/// `𝕍⁺_λ ≅ ℂ[z]^{S_λ}` and `𝕍⁻_λ ≅ Δ_λ·ℂ[z]^{S_λ}`, where `S_λ` permutes
/// the variables inside each standard block and `Δ_λ` is the product of
/// the block Vandermonde polynomials.
#[derive(Clone, Debug)]
pub struct InvariantModel {
    pub space: Space,
    pub lambda: Weight,
    decs: Vec<(Decomposition, Vec<usize>, i64)>,
}

impl InvariantModel {
    pub fn new(space: Space, lambda: &Weight) -> Self {
        let n_big = lambda.len();
        let decs = enumerate_decompositions(lambda)
            .into_iter()
            .map(|i| {
                let p = i.coset_perm(n_big);
                let s = perm_sign(&p);
                (i, p, s)
            })
            .collect();
        InvariantModel {
            space,
            lambda: lambda.clone(),
            decs,
        }
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn n_big(&self) -> usize {
        self.lambda.len()
    }

    /// Variables of the standard blocks.
    pub fn block_vars(&self) -> Vec<Vec<Var>> {
        let std = Decomposition::standard(&self.lambda);
        (1..=self.n_big())
            .map(|j| std.block(j).into_iter().map(|s| Var::Z(s as u8)).collect())
            .collect()
    }

    /// `Δ_λ` (or 1 for the invariant space).
    pub fn twist(&self) -> MPoly {
        match self.space {
            Space::Plus => MPoly::one(),
            Space::MinusOverD => self.block_vars().iter().map(|b| vandermonde(b)).product(),
        }
    }

    /// Smallest numerator degree.
    pub fn min_degree(&self) -> usize {
        match self.space {
            Space::Plus => 0,
            Space::MinusOverD => self.lambda.block_vandermonde_degree(),
        }
    }

    /// Largest numerator degree surviving modulo the symmetric ideal.
    pub fn top_degree(&self) -> usize {
        self.min_degree() + self.lambda.flag_dim()
    }

    /// Degree of a numerator as seen by the grading (shifted by `1/D`).
    pub fn public_degree(&self, kk: usize) -> i64 {
        match self.space {
            Space::Plus => kk as i64,
            Space::MinusOverD => kk as i64 - (self.n() * self.n().saturating_sub(1) / 2) as i64,
        }
    }

    /// Numerator degree for a public degree.
    pub fn numerator_degree(&self, k: i64) -> Option<usize> {
        let kk = match self.space {
            Space::Plus => k,
            Space::MinusOverD => k + (self.n() * self.n().saturating_sub(1) / 2) as i64,
        };
        usize::try_from(kk).ok()
    }

    /// Basis of the numerator-degree-`kk` piece: block-wise monomial
    /// symmetric products, times the twist.
    pub fn ambient_basis(&self, kk: usize) -> Vec<MPoly> {
        let Some(free) = kk.checked_sub(self.min_degree()) else {
            return Vec::new();
        };
        let blocks = self.block_vars();
        let twist = self.twist();
        let mut out = Vec::new();
        for degs in compositions(free, blocks.len()) {
            let mut acc = vec![MPoly::one()];
            for (b, &d) in blocks.iter().zip(&degs) {
                let parts = partitions_with_len(d, b.len());
                let mut next = Vec::new();
                for a in &acc {
                    for mu in &parts {
                        next.push(a * &monomial_symmetric(mu, b));
                    }
                }
                acc = next;
            }
            out.extend(acc.into_iter().map(|p| &p * &twist));
        }
        out
    }

    /// The element of `𝕍^±_λ` whose `I₀`-coefficient is `p`.
    pub fn to_velement(&self, p: &MPoly) -> VElement {
        let mut x = VElement::zero(self.n(), self.n_big());
        for (i, perm, sign) in &self.decs {
            let images: Vec<usize> = perm.iter().map(|&s| s + 1).collect();
            let mut q = p.permute_z(&images);
            if self.space == Space::MinusOverD && *sign < 0 {
                q = -q;
            }
            x.add_term(i.clone(), &q);
        }
        x
    }

    pub fn to_frac(&self, p: &MPoly) -> FracVElement {
        FracVElement::new(self.to_velement(p))
    }

    /// The `I₀`-coefficient.
    pub fn from_velement(&self, x: &VElement) -> MPoly {
        x.coeff(&Decomposition::standard(&self.lambda))
    }
}

/// Partitions of `d` with at most `len` parts, padded to `len`.
fn partitions_with_len(d: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (0..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, len, &mut Vec::new(), &mut out);
    out
}

/// Monomial symmetric polynomial `m_μ` in the given variables.
pub fn monomial_symmetric(mu: &[usize], vars: &[Var]) -> MPoly {
    let mut exps: Vec<usize> = mu.to_vec();
    exps.resize(vars.len(), 0);
    exps.sort_unstable();
    let mut p = MPoly::zero();
    // iterate distinct permutations in lexicographic order
    loop {
        let m = Monomial::from_pairs(vars.iter().zip(&exps).filter(|(_, &e)| e > 0).map(|(&v, &e)| (v, e as u32)));
        p.add_term(m, &Rat::one());
        let n = exps.len();
        let Some(i) = (1..n).rev().find(|&i| exps[i - 1] < exps[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| exps[j] > exps[i - 1]).unwrap();
        exps.swap(i - 1, j);
        exps[i..].reverse();
    }
    p
}

pub(crate) fn to_sparse(p: &MPoly) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

#[derive(Clone, Debug)]
struct Level {
    reps: Vec<MPoly>,
    ech: Echelon<Monomial>,
}

/// `𝕍⁺_λ/J⁺` or `((1/D)𝕍⁻/J⁻)_λ`, degree by degree, where `J` is generated
/// by the elementary symmetric polynomials `σ_s(z)`.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    pub model: InvariantModel,
    levels: BTreeMap<usize, Level>,
}

impl GradedQuotient {
    pub fn new(space: Space, lambda: &Weight) -> Self {
        let model = InvariantModel::new(space, lambda);
        let n = model.n();
        let zs: Vec<Var> = (1..=n).map(|s| Var::Z(s as u8)).collect();
        let sig: Vec<MPoly> = (0..=n).map(|s| elementary_or_one(s, &zs)).collect();
        let mut levels = BTreeMap::new();
        for kk in model.min_degree()..=model.top_degree() {
            let mut ech = Echelon::new();
            for (s, sig_s) in sig.iter().enumerate().skip(1) {
                if kk < s {
                    break;
                }
                for b in model.ambient_basis(kk - s) {
                    ech.insert(&to_sparse(&(sig_s * &b)), Tag::new());
                }
            }
            let mut reps = Vec::new();
            for b in model.ambient_basis(kk) {
                if ech.insert(&to_sparse(&b), unit_tag(reps.len())).is_none() {
                    reps.push(b);
                }
            }
            levels.insert(kk, Level { reps, ech });
        }
        GradedQuotient { model, levels }
    }

    pub fn space(&self) -> Space {
        self.model.space
    }

    pub fn lambda(&self) -> &Weight {
        &self.model.lambda
    }

    /// Representatives (as `I₀`-coefficients) of a numerator degree.
    pub fn reps(&self, kk: usize) -> &[MPoly] {
        self.levels.get(&kk).map_or(&[], |l| &l.reps)
    }

    /// Numerator degrees that carry the quotient.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.keys().copied()
    }

    /// Dimension per public degree (zero pieces omitted).
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.levels
            .iter()
            .filter(|(_, l)| !l.reps.is_empty())
            .map(|(&kk, l)| (self.model.public_degree(kk), l.reps.len()))
            .collect()
    }

    /// All representatives with their public degrees, lowest degree first.
    pub fn all_reps(&self) -> Vec<(i64, MPoly)> {
        self.levels
            .iter()
            .flat_map(|(&kk, l)| l.reps.iter().map(move |p| (kk, p.clone())))
            .map(|(kk, p)| (self.model.public_degree(kk), p))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.levels.values().map(|l| l.reps.len()).sum()
    }

    /// Quotient coordinates of a homogeneous numerator of degree `kk`.
    pub fn coords(&self, p: &MPoly, kk: usize) -> Result<Vec<Rat>> {
        let Some(level) = self.levels.get(&kk) else {
            if p.terms().any(|(m, _)| m.degree() as usize != kk) {
                return consistency("coordinate request for an inhomogeneous element");
            }
            // above the top degree everything lies in J; below the bottom
            // degree the space is empty
            return Ok(Vec::new());
        };
        let (rem, t) = level.ech.reduce(&to_sparse(p));
        if !rem.is_empty() {
            return consistency(format!(
                "{p} is not in the degree-{kk} piece of the {:?} model at {}",
                self.model.space, self.model.lambda
            ));
        }
        Ok((0..level.reps.len())
            .map(|r| t.get(&r).cloned().unwrap_or_else(Rat::zero))
            .collect())
    }

    /// The degree-`k` piece as explicit elements of `𝕍` (numerators over
    /// `D` for the anti-invariant space).
    pub fn piece(&self, k: i64) -> GradedSubspaceBasis {
        let elements = self
            .model
            .numerator_degree(k)
            .map(|kk| self.reps(kk).iter().map(|p| self.model.to_velement(p)).collect())
            .unwrap_or_default();
        GradedSubspaceBasis {
            space: self.model.space,
            lambda: self.model.lambda.clone(),
            degree: k,
            elements,
        }
    }
}

/// Degree-`k` piece of a graded quotient or subspace. For
/// [`Space::MinusOverD`] the listed elements are numerators over `D`.
#[derive(Clone, Debug)]
pub struct GradedSubspaceBasis {
    pub space: Space,
    pub lambda: Weight,
    pub degree: i64,
    pub elements: Vec<VElement>,
}

/// Basis of the degree-`k` piece of `𝕍⁺_λ/J⁺` or `((1/D)𝕍⁻/J⁻)_λ`.
pub fn graded_piece_quotient(space: Space, lambda: &Weight, k: i64) -> GradedSubspaceBasis {
    GradedQuotient::new(space, lambda).piece(k)
}

/// Image of `e_{a,a+1} ⊗ t^0` applied to the model element `p` of weight
/// `λ`, as the model polynomial of weight `λ + ε_a − ε_{a+1}`.
pub(crate) fn raise_in_model(
    src: &InvariantModel,
    dst: &InvariantModel,
    p: &MPoly,
    a: usize,
) -> MPoly {
    let x = src.to_velement(p).act_generator(a, a + 1, 0);
    dst.from_velement(&x)
}

/// Singular vectors of the quotient `((1/D)𝕍⁻/J⁻)_λ` (or `𝕍⁺/J⁺`), one
/// basis per degree in which they exist.
pub fn singular_vectors(space: Space, lambda: &Weight) -> Result<Vec<GradedSubspaceBasis>> {
    if !lambda.is_dominant() {
        return arg(format!("{lambda} is not dominant"));
    }
    let q = GradedQuotient::new(space, lambda);
    let targets: Vec<(usize, GradedQuotient)> = (1..lambda.len())
        .filter_map(|a| lambda.shifted(a, a + 1).map(|w| (a, GradedQuotient::new(space, &w))))
        .collect();
    let mut out = Vec::new();
    for kk in q.degrees().collect::<Vec<_>>() {
        let reps = q.reps(kk);
        if reps.is_empty() {
            continue;
        }
        let mut images: Vec<SparseVec<(usize, usize)>> = Vec::new();
        for p in reps {
            let mut v = SparseVec::new();
            for (a, tq) in &targets {
                let img = raise_in_model(&q.model, &tq.model, p, *a);
                for (r, c) in tq.coords(&img, kk)?.into_iter().enumerate() {
                    if !c.is_zero() {
                        v.insert((*a, r), c);
                    }
                }
            }
            images.push(v);
        }
        let ker = kernel(&images);
        if ker.is_empty() {
            continue;
        }
        let elements = ker
            .iter()
            .map(|t| {
                let mut p = MPoly::zero();
                for (i, c) in t {
                    p.add_assign_ref(&reps[*i].scale(c));
                }
                q.model.to_velement(&p)
            })
            .collect();
        out.push(GradedSubspaceBasis {
            space,
            lambda: lambda.clone(),
            degree: q.model.public_degree(kk),
            elements,
        });
    }
    Ok(out)
}

/// Singular vectors of `𝕍^±_λ` itself (no quotient) in numerator degree
/// `kk`, as model polynomials.
pub fn singular_subspace(space: Space, lambda: &Weight, kk: usize) -> Result<Vec<MPoly>> {
    if !lambda.is_dominant() {
        return arg(format!("{lambda} is not dominant"));
    }
    let src = InvariantModel::new(space, lambda);
    let basis = src.ambient_basis(kk);
    let targets: Vec<(usize, InvariantModel)> = (1..lambda.len())
        .filter_map(|a| lambda.shifted(a, a + 1).map(|w| (a, InvariantModel::new(space, &w))))
        .collect();
    let images: Vec<SparseVec<(usize, Monomial)>> = basis
        .iter()
        .map(|p| {
            let mut v = SparseVec::new();
            for (a, dst) in &targets {
                for (m, c) in raise_in_model(&src, dst, p, *a).terms() {
                    v.insert((*a, m.clone()), c.clone());
                }
            }
            v
        })
        .collect();
    Ok(kernel(&images)
        .into_iter()
        .map(|t| {
            let mut p = MPoly::zero();
            for (i, c) in &t {
                p.add_assign_ref(&basis[*i].scale(c));
            }
            p
        })
        .collect())
}

/// Graded character `Σ_k q^k dim` of the singular part of the quotient.
pub fn singular_character(space: Space, lambda: &Weight) -> Result<BTreeMap<i64, usize>> {
    Ok(singular_vectors(space, lambda)?
        .into_iter()
        .map(|b| (b.degree, b.elements.len()))
        .collect())
}

/// The `𝒮₊₋` pairing between the quotient bases of `𝕍⁺_λ/J⁺` and
/// `((1/D)𝕍⁻/J⁻)_λ`, reduced modulo `J` (i.e. constant terms).
pub fn pairing_matrix(lambda: &Weight) -> Result<Vec<Vec<Rat>>> {
    let qp = GradedQuotient::new(Space::Plus, lambda);
    let qm = GradedQuotient::new(Space::MinusOverD, lambda);
    let plus: Vec<(i64, VElement)> = qp
        .all_reps()
        .into_iter()
        .map(|(k, p)| (k, qp.model.to_velement(&p)))
        .collect();
    let minus: Vec<(i64, FracVElement)> = qm
        .all_reps()
        .into_iter()
        .map(|(k, p)| (k, qm.model.to_frac(&p)))
        .collect();
    let mut m = Vec::with_capacity(plus.len());
    for (dp, x) in &plus {
        let mut row = Vec::with_capacity(minus.len());
        for (dm, y) in &minus {
            if dp + dm != 0 {
                row.push(Rat::zero());
                continue;
            }
            let s = super::element::shapovalov_pm(x, y)?;
            row.push(s.constant_term());
        }
        m.push(row);
    }
    if m.len() != minus.len() {
        return Err(Error::Consistency(format!(
            "quotient dimensions differ at {lambda}: {} vs {}",
            m.len(),
            minus.len()
        )));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::factorial;
    use crate::tensor::element::sn_act;

    fn w(p: &[usize]) -> Weight {
        Weight::new(p.to_vec()).unwrap()
    }

    #[test]
    fn model_elements_are_invariant_or_antiinvariant() {
        for space in [Space::Plus, Space::MinusOverD] {
            let lam = w(&[2, 1]);
            let m = InvariantModel::new(space, &lam);
            for p in m.ambient_basis(m.min_degree() + 2) {
                let x = m.to_velement(&p);
                for sigma in crate::combinat::permutations(3) {
                    let s = if space == Space::Plus { 1 } else { perm_sign(&sigma) };
                    let y = sn_act(&sigma, &x);
                    let expect = if s > 0 { x.clone() } else { x.neg() };
                    assert_eq!(y, expect);
                }
                assert_eq!(m.from_velement(&x), p);
            }
        }
    }

    #[test]
    fn quotient_dimensions_sum_to_n_pow_n() {
        for (n_big, n) in [(2usize, 2usize), (2, 3), (3, 2)] {
            for space in [Space::Plus, Space::MinusOverD] {
                let total: usize = Weight::all(n_big, n)
                    .iter()
                    .map(|l| GradedQuotient::new(space, l).total_dim())
                    .sum();
                assert_eq!(total, n_big.pow(n as u32));
            }
        }
        // one weight, trivial module
        let q = GradedQuotient::new(Space::Plus, &w(&[3]));
        assert_eq!(q.dims(), [(0, 1)].into_iter().collect());
        let _ = factorial(3);
    }

    #[test]
    fn minus_degrees_are_shifted() {
        let q = GradedQuotient::new(Space::MinusOverD, &w(&[1, 1]));
        assert_eq!(q.dims(), [(-1, 1), (0, 1)].into_iter().collect());
        let q = GradedQuotient::new(Space::MinusOverD, &w(&[2]));
        assert_eq!(q.dims(), [(0, 1)].into_iter().collect());
    }

    #[test]
    fn singular_examples() {
        let ch = singular_character(Space::MinusOverD, &w(&[1, 1])).unwrap();
        assert_eq!(ch, [(-1, 1)].into_iter().collect());
        let ch = singular_character(Space::MinusOverD, &w(&[3])).unwrap();
        assert_eq!(ch, [(0, 1)].into_iter().collect());
        assert!(singular_vectors(Space::MinusOverD, &w(&[0, 2])).is_err());
    }

    #[test]
    fn pairing_is_nondegenerate_small() {
        let m = pairing_matrix(&w(&[1, 1])).unwrap();
        assert_eq!(crate::linalg::rank(&m), 2);
    }
}
