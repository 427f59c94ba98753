//! The universal operator `𝒟^K`, its coefficients `B^K_{ij}` as words in
//! `U(gl_N[t])`, their action on `𝕍_λ`, and the `K → ∞` limit.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{arg, consistency, Error, Result};
use crate::poly::symmetric::power_sum;
use crate::poly::{MPoly, Var};
use crate::rat::Rat;
use crate::series::{rdet, DiffOpSeries, Ring, UInvSeries};
use crate::tensor::{enumerate_decompositions, Decomposition, FracVElement, VElement, Weight};

/// The generator `e_{ab} ⊗ t^r` (1-based `a, b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub a: u8,
    pub b: u8,
    pub r: u32,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}[t^{}]", self.a, self.b, self.r)
    }
}

/// A finite sum of coefficient × ordered generator word. Words are kept
/// exactly as produced; no normal ordering.
#[derive(Clone, Default, PartialEq)]
pub struct UEAElement {
    terms: BTreeMap<Vec<Gen>, MPoly>,
}

impl UEAElement {
    pub fn scalar(c: MPoly) -> Self {
        let mut e = UEAElement::default();
        e.add_term(Vec::new(), &c);
        e
    }

    pub fn generator(a: usize, b: usize, r: u32) -> Self {
        Self::word(vec![Gen { a: a as u8, b: b as u8, r }])
    }

    pub fn word(w: Vec<Gen>) -> Self {
        let mut e = UEAElement::default();
        e.add_term(w, &MPoly::one());
        e
    }

    pub fn add_term(&mut self, w: Vec<Gen>, c: &MPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Gen>, &MPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of the empty word.
    pub fn constant_part(&self) -> MPoly {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> Self {
        let mut out = UEAElement::default();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    /// Substitute numeric values for `K_1, …, K_N`.
    pub fn eval_k(&self, k: &[Rat]) -> Self {
        self.map_coeffs(|c| {
            c.eval(|v| match v {
                Var::K(i) => k.get(i as usize - 1).cloned(),
                _ => None,
            })
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }
}

impl Ring for UEAElement {
    fn zero() -> Self {
        UEAElement::default()
    }
    fn one() -> Self {
        UEAElement::scalar(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
    fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = UEAElement::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rat::from_int(k))
    }
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: String = w.iter().map(Gen::to_string).collect();
                if w.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})·{word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How the twisting parameters enter.
#[derive(Clone, Debug, PartialEq)]
pub enum KMode {
    Symbolic,
    Values(Vec<Rat>),
}

/// `B^K_{ij}` for `1 ≤ i ≤ N`, `0 ≤ j ≤ Jmax`.
#[derive(Clone, Debug)]
pub struct BetheFamily {
    pub n_big: usize,
    pub jmax: usize,
    pub k_mode: KMode,
    gens: BTreeMap<(usize, usize), UEAElement>,
}

impl BetheFamily {
    pub fn get(&self, i: usize, j: usize) -> &UEAElement {
        &self.gens[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &UEAElement)> {
        self.gens.iter()
    }

    /// Substitute numeric `K` into a symbolic family.
    pub fn with_k(&self, k: &[Rat]) -> Result<BetheFamily> {
        if k.len() != self.n_big {
            return arg(format!("{} values given for N = {}", k.len(), self.n_big));
        }
        Ok(BetheFamily {
            n_big: self.n_big,
            jmax: self.jmax,
            k_mode: KMode::Values(k.to_vec()),
            gens: self.gens.iter().map(|(ij, e)| (*ij, e.eval_k(k))).collect(),
        })
    }
}

/// `e_{ba}(u) = Σ_{s ≥ 0} (e_{ba} ⊗ t^s) u^{−s−1}`, truncated at `u^{−jmax}`.
fn current(b: usize, a: usize, jmax: usize) -> UInvSeries<UEAElement> {
    let coeffs = (0..=jmax)
        .map(|j| {
            if j == 0 {
                UEAElement::zero()
            } else {
                UEAElement::generator(b, a, j as u32 - 1)
            }
        })
        .collect();
    UInvSeries::from_coeffs(coeffs, jmax)
}

/// The matrix `δ_{ab}(∂ − K_a) − e_{ba}(u)` whose row determinant is `𝒟^K`.
pub fn universal_matrix(n_big: usize, jmax: usize) -> Vec<Vec<DiffOpSeries<UEAElement>>> {
    (1..=n_big)
        .map(|a| {
            (1..=n_big)
                .map(|b| {
                    let mut e = DiffOpSeries::scalar(current(b, a, jmax).neg());
                    if a == b {
                        let k = UInvSeries::constant(UEAElement::scalar(MPoly::var(Var::K(a as u8))), jmax);
                        e = e
                            .add(&DiffOpSeries::d_power(1, jmax))
                            .sub(&DiffOpSeries::scalar(k));
                    }
                    e
                })
                .collect()
        })
        .collect()
}

/// Expand `𝒟^K = ∂^N + Σ_i B^K_i(u) ∂^{N−i}` and read off every `B^K_{ij}`.
pub fn expand_universal_operator(n_big: usize, jmax: usize, k_mode: KMode) -> Result<BetheFamily> {
    if n_big == 0 {
        return arg("N must be at least 1");
    }
    if let KMode::Values(v) = &k_mode {
        if v.len() != n_big {
            return arg(format!("{} K values given for N = {n_big}", v.len()));
        }
    }
    let d = rdet(&universal_matrix(n_big, jmax))?;
    let lead = d.coeff(n_big);
    if lead != UInvSeries::constant(UEAElement::one(), jmax) {
        return consistency(format!("leading coefficient of the universal operator is {lead:?}"));
    }
    let mut gens = BTreeMap::new();
    for i in 1..=n_big {
        let bi = d.coeff(n_big - i);
        for j in 0..=jmax {
            gens.insert((i, j), bi.coeff(j).clone());
        }
    }
    let fam = BetheFamily {
        n_big,
        jmax,
        k_mode: KMode::Symbolic,
        gens,
    };
    match &k_mode {
        KMode::Symbolic => Ok(fam),
        KMode::Values(v) => fam.with_k(v),
    }
}

/// `{e_{ii} ⊗ t^j : 1 ≤ i ≤ N, 0 ≤ j ≤ Jmax}`.
pub fn binfty_generators(n_big: usize, jmax: usize) -> Vec<UEAElement> {
    (1..=n_big)
        .flat_map(|i| (0..=jmax).map(move |j| UEAElement::generator(i, i, j as u32)))
        .collect()
}

fn eval_z_all(x: &VElement, z: &[Rat]) -> VElement {
    x.eval(|v| match v {
        Var::Z(s) => z.get(s as usize - 1).cloned(),
        _ => None,
    })
}

/// Apply the words right to left, sharing work between words with a common
/// right end. With `z` given, coefficients are specialized after each step.
fn apply_words(terms: &[(&[Gen], &MPoly)], x: &VElement, z: Option<&[Rat]>) -> VElement {
    let mut out = VElement::zero(x.n(), x.n_big());
    let mut groups: BTreeMap<Gen, Vec<(&[Gen], &MPoly)>> = BTreeMap::new();
    for &(w, c) in terms {
        match w.split_last() {
            None => out = out.add(&x.mul_poly(c)),
            Some((g, rest)) => groups.entry(*g).or_default().push((rest, c)),
        }
    }
    for (g, sub) in groups {
        let mut y = x.act_generator(g.a as usize, g.b as usize, g.r);
        if let Some(z) = z {
            y = eval_z_all(&y, z);
        }
        if !y.is_zero() {
            out = out.add(&apply_words(&sub, &y, z));
        }
    }
    out
}

/// Action of `E` on `x` through the generators.
pub fn apply_uea(e: &UEAElement, x: &VElement) -> VElement {
    let terms: Vec<(&[Gen], &MPoly)> = e.terms.iter().map(|(w, c)| (w.as_slice(), c)).collect();
    apply_words(&terms, x, None)
}

/// Action on `x / D`.
pub fn apply_uea_frac(e: &UEAElement, x: &FracVElement) -> FracVElement {
    FracVElement::new(apply_uea(e, &x.num))
}

/// Action with `z` specialized to a point.
pub fn apply_uea_at(e: &UEAElement, x: &VElement, z: &[Rat]) -> VElement {
    let terms: Vec<(&[Gen], &MPoly)> = e.terms.iter().map(|(w, c)| (w.as_slice(), c)).collect();
    apply_words(&terms, &eval_z_all(x, z), Some(z))
}

/// Square matrix over `ℂ[z, K]`.
pub type Matrix = Vec<Vec<MPoly>>;

/// Matrix of a weight-preserving `E` on `𝕍_λ` in the basis `v_I`, in the
/// order of [`enumerate_decompositions`]. Column `c` holds `E(v_{I_c})`.
pub fn operator_matrix(e: &UEAElement, lambda: &Weight, z: Option<&[Rat]>) -> Result<Matrix> {
    let decs = enumerate_decompositions(lambda);
    let index: BTreeMap<&Decomposition, usize> = decs.iter().enumerate().map(|(k, i)| (i, k)).collect();
    let d = decs.len();
    let mut m = vec![vec![MPoly::zero(); d]; d];
    for (c, i) in decs.iter().enumerate() {
        let x = VElement::basis(i, lambda.len(), MPoly::one());
        let y = match z {
            Some(z) => apply_uea_at(e, &x, z),
            None => apply_uea(e, &x),
        };
        for (j, p) in y.terms() {
            let Some(&r) = index.get(j) else {
                return consistency(format!("operator leaves the weight space {lambda}: term at {j}"));
            };
            m[r][c] = p.clone();
        }
    }
    Ok(m)
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let mut acc = MPoly::zero();
                    for k in 0..d {
                        if !a[r][k].is_zero() && !b[k][c].is_zero() {
                            acc.add_assign_ref(&(&a[r][k] * &b[k][c]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

/// First nonzero entry, as a witness string.
pub fn first_nonzero(m: &Matrix) -> Option<String> {
    for (r, row) in m.iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            if !p.is_zero() {
                return Some(format!("entry ({r},{c}) = {p}"));
            }
        }
    }
    None
}

/// `[B_{ij}, B_{kl}] = 0` on `𝕍_λ` for every requested pair. The weight
/// space `𝕍_λ` contains `𝕍±_λ`, so this covers both.
pub fn commutativity_check(
    fam: &BetheFamily,
    lambda: &Weight,
    pairs: &[((usize, usize), (usize, usize))],
    z: Option<&[Rat]>,
) -> Result<usize> {
    if lambda.len() != fam.n_big {
        return arg(format!("weight {lambda} does not have N = {} parts", fam.n_big));
    }
    let mut cache: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
    for &(p, q) in pairs {
        for ij in [p, q] {
            if !cache.contains_key(&ij) {
                if !fam.gens.contains_key(&ij) {
                    return arg(format!("B{ij:?} is beyond the expansion"));
                }
                cache.insert(ij, operator_matrix(fam.get(ij.0, ij.1), lambda, z)?);
            }
        }
        if let Some(w) = first_nonzero(&commutator(&cache[&p], &cache[&q])) {
            return Err(Error::Verification(format!("[B{p:?}, B{q:?}] on {lambda}: {w}")));
        }
    }
    Ok(pairs.len())
}

/// All unordered pairs of generators with `j ≤ jmax`.
pub fn all_pairs(n_big: usize, jmax: usize) -> Vec<((usize, usize), (usize, usize))> {
    let idx: Vec<(usize, usize)> = (1..=n_big).flat_map(|i| (0..=jmax).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            out.push((idx[a], idx[b]));
        }
    }
    out
}

/// `Σ_i e_{ii} ⊗ t^r` acts on every `v_I` of `𝕍_λ` as multiplication by
/// `p_r(z)`, for `r ≤ rmax`.
pub fn central_action_check(lambda: &Weight, rmax: u32) -> Result<()> {
    let zs: Vec<Var> = (1..=lambda.n()).map(|s| Var::Z(s as u8)).collect();
    for r in 0..=rmax {
        let mut e = UEAElement::zero();
        for i in 1..=lambda.len() {
            e = e.add(&UEAElement::generator(i, i, r));
        }
        let pr = power_sum(r, &zs);
        for i in enumerate_decompositions(lambda) {
            let x = VElement::basis(&i, lambda.len(), MPoly::one());
            let y = apply_uea(&e, &x);
            if y != x.mul_poly(&pr) {
                return Err(Error::Verification(format!(
                    "Σ e_ii t^{r} on v{i} gives {y}, expected multiplication by {pr}"
                )));
            }
        }
    }
    Ok(())
}

/// `[e_{ab} t^r, e_{cd} t^s] − δ_{bc} e_{ad} t^{r+s} + δ_{da} e_{cb} t^{r+s}`,
/// which must act as zero.
pub fn current_relation(a: usize, b: usize, c: usize, d: usize, r: u32, s: u32) -> UEAElement {
    let x = UEAElement::generator(a, b, r);
    let y = UEAElement::generator(c, d, s);
    let mut e = x.mul(&y).sub(&y.mul(&x));
    if b == c {
        e = e.sub(&UEAElement::generator(a, d, r + s));
    }
    if d == a {
        e = e.add(&UEAElement::generator(c, b, r + s));
    }
    e
}

/// All current-algebra relations with `r, s ≤ rmax` annihilate `𝕍_λ`.
pub fn current_relations_check(lambda: &Weight, rmax: u32) -> Result<usize> {
    let nb = lambda.len();
    let decs = enumerate_decompositions(lambda);
    let mut count = 0;
    for a in 1..=nb {
        for b in 1..=nb {
            for c in 1..=nb {
                for d in 1..=nb {
                    for r in 0..=rmax {
                        for s in 0..=rmax {
                            let e = current_relation(a, b, c, d, r, s);
                            for i in &decs {
                                let x = VElement::basis(i, nb, MPoly::one());
                                let y = apply_uea(&e, &x);
                                if !y.is_zero() {
                                    return Err(Error::Verification(format!(
                                        "relation for e{a}{b}[t^{r}], e{c}{d}[t^{s}] on v{i} leaves {y}"
                                    )));
                                }
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

/// With `K = 0`, every `B_{ij}` commutes with every `e_{ab} ⊗ t^0`, checked
/// on all basis vectors `v_I` of `V^{⊗n}`.
pub fn k_zero_commutation_check(n_big: usize, n: usize, jmax: usize) -> Result<usize> {
    let fam = expand_universal_operator(n_big, jmax, KMode::Values(vec![Rat::zero(); n_big]))?;
    let mut count = 0;
    for lambda in Weight::all(n_big, n) {
        for i in enumerate_decompositions(&lambda) {
            let x = VElement::basis(&i, n_big, MPoly::one());
            for (ij, b) in fam.iter() {
                let bx = apply_uea(b, &x);
                for a in 1..=n_big {
                    for c in 1..=n_big {
                        if a == c {
                            continue;
                        }
                        let lhs = apply_uea(b, &x.act_generator(a, c, 0));
                        let rhs = bx.act_generator(a, c, 0);
                        if lhs != rhs {
                            return Err(Error::Verification(format!(
                                "B{ij:?} does not commute with e{a}{c} on v{i}: {}",
                                lhs.sub(&rhs)
                            )));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// A zone `σ ∈ S_N` (0-based one-line) and scale `c`: `K_{σ(k)} = c^{N+1−k}`.
pub fn zone_values(sigma: &[usize], c: &Rat) -> Vec<Rat> {
    let nb = sigma.len();
    let mut k = vec![Rat::zero(); nb];
    for (pos, &s) in sigma.iter().enumerate() {
        k[s] = c.pow((nb - pos) as u32);
    }
    k
}

/// The predicted limit of the normalized `B_{ij}` in zone `σ`:
/// `Σ_{k ≥ i} e_{σ(k)σ(k)} ⊗ t^{j−1}` for `j ≥ 1`, and `1` for `j = 0`.
pub fn zone_limit(sigma: &[usize], i: usize, j: usize) -> UEAElement {
    if j == 0 {
        return UEAElement::one();
    }
    let mut e = UEAElement::zero();
    for &s in &sigma[i - 1..] {
        e = e.add(&UEAElement::generator(s + 1, s + 1, j as u32 - 1));
    }
    e
}

/// Normalizing factor for `B_{ij}` in zone `σ`: `(−1)^i ∏_{k<i} K_{σ(k)}`
/// for `j ≥ 1`, and `(−1)^i ∏_{k≤i} K_{σ(k)}` for `j = 0`.
pub fn zone_normalization(sigma: &[usize], k: &[Rat], i: usize, j: usize) -> Rat {
    let upto = if j == 0 { i } else { i - 1 };
    let mut f: Rat = sigma[..upto].iter().map(|&s| k[s].clone()).fold(Rat::one(), |a, b| &a * &b);
    if i % 2 == 1 {
        f = -f;
    }
    f
}

/// One measurement of a `K → ∞` sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub label: String,
    pub scale: String,
    pub discrepancy: f64,
    /// `discrepancy(previous scale) / discrepancy(this scale)`.
    pub ratio: Option<f64>,
}

/// Evaluate an exact discrepancy at each scale and record the ratios.
pub fn sweep_cells(label: &str, scales: &[Rat], mut f: impl FnMut(&Rat) -> Result<Rat>) -> Result<Vec<SweepCell>> {
    let mut out = Vec::new();
    let mut prev: Option<f64> = None;
    for c in scales {
        let d = f(c)?.abs().to_f64();
        let ratio = prev.map(|p| if d == 0.0 { f64::INFINITY } else { p / d });
        out.push(SweepCell {
            label: label.to_string(),
            scale: c.to_string(),
            discrepancy: d,
            ratio,
        });
        prev = Some(d);
    }
    Ok(out)
}

/// Largest absolute entry of a matrix of constants.
pub fn max_abs_entry(m: &Matrix) -> Rat {
    m.iter()
        .flatten()
        .map(MPoly::max_abs_coeff)
        .fold(Rat::zero(), |a, b| if b > a { b } else { a })
}

/// Maximal absolute entry of `normalized B_{ij} − limit` over the matrix on
/// `𝕍_λ`, at a rational point `z`, for each scale.
pub fn asymptotic_sweep(
    fam: &BetheFamily,
    lambda: &Weight,
    sigma: &[usize],
    scales: &[Rat],
    z: &[Rat],
) -> Result<Vec<SweepCell>> {
    if fam.k_mode != KMode::Symbolic {
        return arg("asymptotic sweeps need a symbolic family");
    }
    let mut out = Vec::new();
    for ((i, j), b) in fam.iter() {
        let (i, j) = (*i, *j);
        let limit = operator_matrix(&zone_limit(sigma, i, j), lambda, Some(z))?;
        out.extend(sweep_cells(&format!("B{i}{j}"), scales, |c| {
            let k = zone_values(sigma, c);
            let norm = zone_normalization(sigma, &k, i, j).recip();
            let m = operator_matrix(&b.eval_k(&k).scale(&norm), lambda, Some(z))?;
            Ok(max_abs_entry(&mat_sub(&m, &limit)))
        })?);
    }
    Ok(out)
}

/// A sweep passes when no cell shrinks by less than a factor 5 per decade
/// (exact zeros always pass) and the worst discrepancy at each scale shrinks
/// by a factor of at least 5, and at most `max_rate` when one is given,
/// unless it is exactly zero.
pub fn sweep_converges(cells: &[SweepCell], max_rate: Option<f64>) -> std::result::Result<(), String> {
    for c in cells {
        if let Some(r) = c.ratio {
            if c.discrepancy != 0.0 && r < 5.0 {
                return Err(format!(
                    "{} at c = {}: discrepancy {:e}, ratio {r:.3}",
                    c.label, c.scale, c.discrepancy
                ));
            }
        }
    }
    let mut worst: Vec<(String, f64)> = Vec::new();
    for c in cells {
        match worst.iter_mut().find(|(s, _)| *s == c.scale) {
            Some((_, d)) => *d = d.max(c.discrepancy),
            None => worst.push((c.scale.clone(), c.discrepancy)),
        }
    }
    for w in worst.windows(2) {
        let (prev, cur) = (w[0].1, w[1].1);
        if cur == 0.0 {
            continue;
        }
        let r = prev / cur;
        if r < 5.0 || max_rate.is_some_and(|m| r > m) {
            return Err(format!(
                "worst discrepancy {cur:e} at c = {} shrinks by {r:.3} per decade",
                w[1].0
            ));
        }
    }
    Ok(())
}

/// The limits in zone `σ` span the same operator space on `𝕍_λ` as the
/// diagonal generators `e_{mm} ⊗ t^{j−1}`, for each `j` (so the limit algebra
/// does not depend on the zone).
pub fn zone_span_matches(n_big: usize, jmax: usize, sigma: &[usize], lambda: &Weight, z: &[Rat]) -> Result<bool> {
    use crate::linalg::rank;
    for j in 1..=jmax {
        let flat = |e: &UEAElement| -> Result<Vec<Rat>> {
            Ok(operator_matrix(e, lambda, Some(z))?
                .into_iter()
                .flatten()
                .map(|p| p.constant_term())
                .collect())
        };
        let lim: Vec<Vec<Rat>> = (1..=n_big).map(|i| flat(&zone_limit(sigma, i, j))).collect::<Result<_>>()?;
        let diag: Vec<Vec<Rat>> = (1..=n_big)
            .map(|m| flat(&UEAElement::generator(m, m, j as u32 - 1)))
            .collect::<Result<_>>()?;
        let both: Vec<Vec<Rat>> = lim.iter().chain(diag.iter()).cloned().collect();
        let (a, b, c) = (rank(&lim), rank(&diag), rank(&both));
        if !(a == b && b == c) {
            return Ok(false);
        }
    }
    Ok(true)
}
