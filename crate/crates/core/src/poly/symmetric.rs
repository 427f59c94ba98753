//! Symmetric-function building blocks: elementary and power sums,
//! Vandermonde products, block resultants, Schur polynomials, and the
//! rewriting of block-symmetric polynomials in terms of power sums.

use std::collections::BTreeMap;

use super::mpoly::{Monomial, MPoly};
use super::var::Var;
use crate::combinat::{combinations, perm_sign, permutations};
use crate::error::{arg, Error, Result};
use crate::rat::Rat;

/// `σ_s` of the listed variables.
pub fn elementary_symmetric(s: usize, vars: &[Var]) -> Result<MPoly> {
    if s < 1 || s > vars.len() {
        return arg(format!(
            "elementary symmetric index {s} outside 1..={}",
            vars.len()
        ));
    }
    Ok(elementary_or_one(s, vars))
}

/// `e_s` with the conventions `e_0 = 1` and `e_s = 0` for `s > |vars|`.
pub fn elementary_or_one(s: usize, vars: &[Var]) -> MPoly {
    if s == 0 {
        return MPoly::one();
    }
    let mut p = MPoly::zero();
    for subset in combinations(vars, s) {
        p.add_term(Monomial::from_pairs(subset.into_iter().map(|v| (v, 1))), &Rat::one());
    }
    p
}

pub fn power_sum(r: u32, vars: &[Var]) -> MPoly {
    let mut p = MPoly::zero();
    for &v in vars {
        p.add_term(Monomial::from_pairs([(v, r)]), &Rat::one());
    }
    p
}

/// `∏_{i<j} (x_j − x_i)`.
pub fn vandermonde(vars: &[Var]) -> MPoly {
    let mut p = MPoly::one();
    for j in 0..vars.len() {
        for i in 0..j {
            p = &p * &(&MPoly::var(vars[j]) - &MPoly::var(vars[i]));
        }
    }
    p
}

/// `∏_{i<j} ∏_{a ∈ B_i, b ∈ B_j} (b − a)` for pairwise disjoint blocks.
pub fn block_resultant(blocks: &[Vec<Var>]) -> Result<MPoly> {
    let mut seen = std::collections::BTreeSet::new();
    for b in blocks {
        for v in b {
            if !seen.insert(*v) {
                return arg(format!("variable {v} appears in two blocks"));
            }
        }
    }
    let mut p = MPoly::one();
    for j in 0..blocks.len() {
        for i in 0..j {
            for a in &blocks[i] {
                for b in &blocks[j] {
                    p = &p * &(&MPoly::var(*b) - &MPoly::var(*a));
                }
            }
        }
    }
    Ok(p)
}

/// Determinant of a small square matrix of polynomials (Leibniz expansion).
pub fn det(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    let mut out = MPoly::zero();
    for p in permutations(n) {
        let mut t = MPoly::int(perm_sign(&p));
        for (row, &col) in p.iter().enumerate() {
            t = &t * &m[row][col];
            if t.is_zero() {
                break;
            }
        }
        out.add_assign_ref(&t);
    }
    out
}

/// Schur polynomial `s_μ(x_1, …, x_k)` by the bialternant formula.
/// `mu` may be shorter than `vars` (padded with zeros).
pub fn schur(mu: &[usize], vars: &[Var]) -> Result<MPoly> {
    let k = vars.len();
    if mu.iter().filter(|&&p| p > 0).count() > k {
        return Ok(MPoly::zero());
    }
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return arg("partition must be weakly decreasing");
    }
    if k == 0 {
        return Ok(MPoly::one());
    }
    let part = |b: usize| mu.get(b).copied().unwrap_or(0);
    let alt = |shift: &dyn Fn(usize) -> usize| -> MPoly {
        let m: Vec<Vec<MPoly>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| MPoly::var(vars[a]).pow((shift(b) + k - 1 - b) as u32))
                    .collect()
            })
            .collect();
        det(&m)
    };
    let num = alt(&part);
    let den = alt(&|_| 0);
    num.div_exact(&den)
        .ok_or_else(|| Error::Consistency("bialternant not divisible".into()))
}

/// Newton's identities: `e_k` as a polynomial in power-sum symbols
/// `p_1, …, p_k` named by `sym`.
pub fn elementary_in_power_sums(k: usize, sym: impl Fn(u16) -> Var) -> MPoly {
    let mut e = vec![MPoly::one()];
    for m in 1..=k {
        let mut acc = MPoly::zero();
        for i in 1..=m {
            let t = &e[m - i] * &MPoly::var(sym(i as u16));
            if i % 2 == 1 {
                acc.add_assign_ref(&t);
            } else {
                acc.sub_assign_ref(&t);
            }
        }
        e.push(acc.scale(&Rat::new(1, m as i64)));
    }
    e.pop().unwrap()
}

/// Rewrite a polynomial that is symmetric in each variable block as a
/// polynomial in the power-sum symbols `Var::P(block_id, r)`.
///
/// `blocks` pairs a block id with its variables. Variables outside every
/// block are carried along as coefficients. Fails if the input is not
/// symmetric in some block.
pub fn block_symmetric_to_power_sums(h: &MPoly, blocks: &[(u8, Vec<Var>)]) -> Result<MPoly> {
    let mut cur = h.clone();
    for (id, vars) in blocks {
        cur = symmetric_to_power_sums(&cur, *id, vars)?;
    }
    Ok(cur)
}

fn symmetric_to_power_sums(h: &MPoly, id: u8, vars: &[Var]) -> Result<MPoly> {
    let k = vars.len();
    let e_in_p: Vec<MPoly> = (0..=k)
        .map(|j| {
            if j == 0 {
                MPoly::one()
            } else {
                elementary_in_power_sums(j, |r| Var::P(id, r))
            }
        })
        .collect();
    let e_in_x: Vec<MPoly> = (0..=k).map(|j| elementary_or_one(j, vars)).collect();

    let split = |m: &Monomial| -> (Vec<u32>, Monomial) {
        let exps = vars.iter().map(|&v| m.exponent(v)).collect();
        let rest = Monomial::from_pairs(m.pairs().iter().filter(|(v, _)| !vars.contains(v)).copied());
        (exps, rest)
    };

    let mut rem = h.clone();
    let mut out = MPoly::zero();
    let mut guard = 0usize;
    loop {
        // group remaining terms by their block exponent vector
        let mut groups: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
        for (m, c) in rem.terms() {
            let (exps, rest) = split(m);
            groups
                .entry(exps)
                .or_default()
                .add_term(rest, c);
        }
        let Some((top, coef)) = groups.into_iter().next_back() else {
            break;
        };
        if top.iter().all(|&e| e == 0) {
            out.add_assign_ref(&coef);
            break;
        }
        if top.windows(2).any(|w| w[0] < w[1]) {
            return arg(format!("polynomial is not symmetric in block {id}"));
        }
        let mut in_x = coef.clone();
        let mut in_p = coef;
        for j in 1..=k {
            let next = top.get(j).copied().unwrap_or(0);
            let pw = top[j - 1] - next;
            if pw > 0 {
                in_x = &in_x * &e_in_x[j].pow(pw);
                in_p = &in_p * &e_in_p[j].pow(pw);
            }
        }
        rem.sub_assign_ref(&in_x);
        out.add_assign_ref(&in_p);
        guard += 1;
        if guard > 100_000 {
            return arg("symmetric reduction did not terminate");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(n: usize) -> Vec<Var> {
        (1..=n).map(|s| Var::Z(s as u8)).collect()
    }

    #[test]
    fn elementary_examples() {
        let z = |s| MPoly::z(s);
        assert_eq!(elementary_symmetric(1, &zs(2)).unwrap(), &z(1) + &z(2));
        assert_eq!(elementary_symmetric(2, &zs(2)).unwrap(), &z(1) * &z(2));
        let e2 = &(&(&z(1) * &z(2)) + &(&z(1) * &z(3))) + &(&z(2) * &z(3));
        assert_eq!(elementary_symmetric(2, &zs(3)).unwrap(), e2);
        assert!(elementary_symmetric(0, &zs(2)).is_err());
        assert!(elementary_symmetric(3, &zs(2)).is_err());
    }

    #[test]
    fn vandermonde_examples() {
        let z = |s| MPoly::z(s);
        assert_eq!(vandermonde(&zs(1)), MPoly::one());
        assert_eq!(vandermonde(&zs(2)), &z(2) - &z(1));
        let v3 = &(&(&z(2) - &z(1)) * &(&z(3) - &z(1))) * &(&z(3) - &z(2));
        assert_eq!(vandermonde(&zs(3)), v3);
        assert_eq!(vandermonde(&zs(4)).total_degree(), Some(6));
    }

    #[test]
    fn block_resultant_examples() {
        let z = |s| MPoly::z(s);
        let v = |s: u8| Var::Z(s);
        assert_eq!(block_resultant(&[vec![v(1)], vec![v(2)]]).unwrap(), &z(2) - &z(1));
        assert_eq!(block_resultant(&[vec![v(2)], vec![v(1)]]).unwrap(), &z(1) - &z(2));
        assert_eq!(
            block_resultant(&[vec![v(1), v(2)], vec![v(3)]]).unwrap(),
            &(&z(3) - &z(1)) * &(&z(3) - &z(2))
        );
        assert!(block_resultant(&[vec![v(1)], vec![v(1)]]).is_err());
    }

    #[test]
    fn schur_small_cases() {
        let x = zs(2);
        assert_eq!(schur(&[], &x).unwrap(), MPoly::one());
        assert_eq!(schur(&[1], &x).unwrap(), elementary_or_one(1, &x));
        assert_eq!(schur(&[1, 1], &x).unwrap(), elementary_or_one(2, &x));
        // s_(2)(x1,x2) = h_2
        let h2 = &(&power_sum(2, &x) + &elementary_or_one(2, &x)) + &MPoly::zero();
        assert_eq!(schur(&[2], &x).unwrap(), h2);
        assert!(schur(&[1, 1, 1], &x).unwrap().is_zero());
    }

    #[test]
    fn power_sum_rewrite_roundtrip() {
        let x = zs(3);
        let h = &schur(&[2, 1], &x).unwrap() * &MPoly::var(Var::K(1));
        let p = block_symmetric_to_power_sums(&h, &[(1, x.clone())]).unwrap();
        let back = p.substitute(|v| match v {
            Var::P(1, r) => Some(power_sum(r as u32, &x)),
            _ => None,
        });
        assert_eq!(back, h);
        assert!(block_symmetric_to_power_sums(&MPoly::z(1), &[(1, x)]).is_err());
    }
}
