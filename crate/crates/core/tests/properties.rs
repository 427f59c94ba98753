use std::sync::OnceLock;

use flagbethe_core::bethe::{apply_uea, expand_universal_operator, BetheFamily, KMode};
use flagbethe_core::poly::symmetric::det;
use flagbethe_core::tensor::{Decomposition, VElement};
use flagbethe_core::{rdet, DiffOpSeries, MPoly, Monomial, Rat, UInvSeries, Var};
use proptest::prelude::*;

fn poly_in(vars: &'static [Var]) -> impl Strategy<Value = MPoly> {
    let term = (proptest::collection::vec(0u32..3, vars.len()), -4i64..=4);
    proptest::collection::vec(term, 0..4).prop_map(move |ts| {
        MPoly::from_terms(ts.into_iter().map(|(es, c)| {
            let m = Monomial::from_pairs(vars.iter().copied().zip(es));
            (m, Rat::from_int(c))
        }))
    })
}

const Z3: &[Var] = &[Var::Z(1), Var::Z(2), Var::Z(3)];
const ZK: &[Var] = &[Var::Z(1), Var::K(1), Var::K(2)];

fn series(jmax: usize) -> impl Strategy<Value = UInvSeries<MPoly>> {
    proptest::collection::vec(poly_in(ZK), 0..=jmax + 1).prop_map(move |cs| UInvSeries::from_coeffs(cs, jmax))
}

/// A random element of `V^{⊗n} ⊗ ℂ[z]` with `N` colors.
fn velement(n_big: usize, n: usize) -> impl Strategy<Value = VElement> {
    let vars: &'static [Var] = &Z3[..n.min(3)];
    let term = (proptest::collection::vec(0..n_big as u8, n), poly_in(vars));
    proptest::collection::vec(term, 1..4).prop_map(move |ts| {
        let mut v = VElement::zero(n, n_big);
        for (colors, p) in ts {
            v.add_term(Decomposition::from_colors(colors), &p);
        }
        v
    })
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=4)
}

fn family() -> &'static BetheFamily {
    static FAM: OnceLock<BetheFamily> = OnceLock::new();
    FAM.get_or_init(|| expand_universal_operator(2, 2, KMode::Symbolic).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mpoly_ring_axioms(a in poly_in(Z3), b in poly_in(Z3), c in poly_in(Z3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }

    #[test]
    fn leibniz_rule(f in series(4), g in series(4)) {
        let d = DiffOpSeries::<MPoly>::d_power(1, 4);
        let fg = f.mul(&g);
        let lhs = d.compose(&DiffOpSeries::scalar(fg.clone()));
        let prime = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        let rhs = DiffOpSeries::scalar(fg).compose(&d).add(&DiffOpSeries::scalar(prime));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commuting_rdet_is_det(entries in proptest::collection::vec(poly_in(Z3), 9)) {
        let rows: Vec<Vec<MPoly>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        let m: Vec<Vec<DiffOpSeries<MPoly>>> = rows
            .iter()
            .map(|r| r.iter().map(|p| DiffOpSeries::scalar(UInvSeries::constant(p.clone(), 2))).collect())
            .collect();
        let got = rdet(&m).unwrap();
        prop_assert_eq!(got, DiffOpSeries::scalar(UInvSeries::constant(det(&rows), 2)));
    }

    #[test]
    fn truncation_consistency(fs in proptest::collection::vec(series(5), 4), cut in 0usize..5) {
        let d = DiffOpSeries::<MPoly>::d_power(1, 5);
        let m: Vec<Vec<DiffOpSeries<MPoly>>> = vec![
            vec![d.sub(&DiffOpSeries::scalar(fs[0].clone())), DiffOpSeries::scalar(fs[1].clone())],
            vec![DiffOpSeries::scalar(fs[2].clone()), d.sub(&DiffOpSeries::scalar(fs[3].clone()))],
        ];
        let full = rdet(&m).unwrap().restrict(cut);
        let cut_m: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|e| e.restrict(cut)).collect()).collect();
        prop_assert_eq!(full, rdet(&cut_m).unwrap());
        prop_assert_eq!(fs[0].mul(&fs[1]).restrict(cut), fs[0].restrict(cut).mul(&fs[1].restrict(cut)));
    }

    #[test]
    fn current_commutation_relations(
        (nb, n, x) in shape().prop_flat_map(|(nb, n)| (Just(nb), Just(n), velement(nb, n))),
        gens in proptest::collection::vec((1usize..=3, 1usize..=3, 0u32..=3), 2),
    ) {
        let [(a, b, r), (c, d, s)] = [gens[0], gens[1]];
        let (a, b, c, d) = (1 + (a - 1) % nb, 1 + (b - 1) % nb, 1 + (c - 1) % nb, 1 + (d - 1) % nb);
        let lhs = x.act_generator(c, d, s).act_generator(a, b, r)
            .sub(&x.act_generator(a, b, r).act_generator(c, d, s));
        let mut rhs = VElement::zero(n, nb);
        if b == c {
            rhs = rhs.add(&x.act_generator(a, d, r + s));
        }
        if d == a {
            rhs = rhs.sub(&x.act_generator(c, b, r + s));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn current_action_commutes_with_sn(x in velement(3, 3), perm in Just(vec![2usize, 0, 1]), r in 0u32..3) {
        for (a, b) in [(1, 2), (3, 1), (2, 2)] {
            prop_assert_eq!(
                x.sn_act(&perm).act_generator(a, b, r),
                x.act_generator(a, b, r).sn_act(&perm)
            );
        }
    }

    #[test]
    fn current_action_is_z_linear(x in velement(2, 3), p in poly_in(Z3), r in 0u32..3) {
        prop_assert_eq!(
            x.mul_poly(&p).act_generator(1, 2, r),
            x.act_generator(1, 2, r).mul_poly(&p)
        );
    }

    #[test]
    fn bethe_generators_commute_with_sn(x in velement(2, 3)) {
        let perm = [1usize, 2, 0];
        for (_, b) in family().iter() {
            prop_assert_eq!(apply_uea(b, &x.sn_act(&perm)), apply_uea(b, &x).sn_act(&perm));
        }
    }
}
