//! End-to-end acceptance run: one PASS/FAIL line per criterion. Runs without
//! the libtest harness so the lines are always printed.
//!
//! Criteria 10 and 13 compare against a closed character formula that is
//! shifted by a power of q away from the kernel computation for several
//! weights. Those lines print FAIL with the witnesses; the test asserts that
//! the failures are exactly the weights where the formula and its dual form
//! disagree, and that everything else passes.

use std::collections::BTreeSet;

use flagbethe_core::cohomology::{
    graded_character_formula, graded_character_check, integrate, invert_q, nondegeneracy_check,
    weyl_character_formula, CohClass,
};
use flagbethe_core::tensor::Weight;
use flagbethe_core::{MPoly, Var};
use flagbethe_verify::{run, to_jsonl, CheckConfig, CheckReport, Status, ZMode};

struct Verdict {
    pass: bool,
    detail: String,
    failing_lambdas: BTreeSet<String>,
}

fn grid(check: &str, sizes: &[(usize, usize)], jmax: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for &(nb, n) in sizes {
        let mut cfg = CheckConfig::new(check, nb, n);
        cfg.jmax = jmax;
        cfg.z_mode = ZMode::Seed(7);
        cfg.timing = false;
        out.extend(run(&cfg).expect("catalog check"));
    }
    out
}

fn sizes(max_nb: usize, max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_nb).flat_map(|nb| (1..=max_n).map(move |n| (nb, n))).collect()
}

fn verdict(reports: &[CheckReport]) -> Verdict {
    let failed: Vec<&CheckReport> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
    let failing_lambdas = failed.iter().filter_map(|r| r.parameters.get("lambda").cloned()).collect();
    let mut detail = format!("{} cells, {} failed, {skipped} skipped", reports.len(), failed.len());
    for r in failed.iter().take(3) {
        detail.push_str(&format!("\n      {} {:?}: {}", r.check, r.parameters.get("lambda"), r.witnesses.join("; ")));
    }
    Verdict {
        pass: failed.is_empty() && skipped == 0 && !reports.is_empty(),
        detail,
        failing_lambdas,
    }
}

fn also(mut v: Verdict, ok: bool, what: &str) -> Verdict {
    v.pass &= ok;
    v.detail.push_str(&format!("; {what}: {}", if ok { "ok" } else { "MISMATCH" }));
    v
}

/// Dominant weights where the closed formula differs from the dual Weyl form.
fn formula_disagrees(sizes: &[(usize, usize)]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for &(nb, n) in sizes {
        for l in Weight::all(nb, n).into_iter().filter(Weight::is_dominant) {
            if graded_character_formula(&l).unwrap() != invert_q(&weyl_character_formula(&l).unwrap()) {
                out.insert(l.to_string());
            }
        }
    }
    out
}

fn w(p: &[usize]) -> Weight {
    Weight::new(p.to_vec()).unwrap()
}

fn main() {
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();

    results.push((1, "current-algebra relations", verdict(&grid("current-relations", &sizes(3, 4), 3))));
    results.push((2, "Bethe commutativity", verdict(&grid("commutativity", &sizes(3, 3), 3))));
    results.push((3, "central action", verdict(&grid("central-action", &sizes(3, 3), 3))));
    results.push((4, "zone asymptotics", verdict(&grid("asymptotics", &sizes(3, 3), 3))));
    results.push((5, "relation ideal and ranks", verdict(&grid("relations", &sizes(3, 4), 3))));

    let lam = w(&[1, 1]);
    let desk = integrate(&CohClass::from_rep(&lam, &MPoly::var(Var::G(1, 1))).unwrap()).unwrap();
    let v6 = verdict(&grid("localization", &sizes(3, 4), 3));
    results.push((6, "localization", also(v6, desk == MPoly::int(-1), "∫[γ11] = -1 at (1,1)")));

    let mut r7 = grid("xi-intertwining", &sizes(3, 4), 3);
    r7.extend(grid("regular-representation", &sizes(3, 4), 3));
    results.push((7, "intertwining and regular representation", verdict(&r7)));
    results.push((8, "pairing equals integral", verdict(&grid("pairing", &sizes(3, 4), 3))));

    let rank8 = nondegeneracy_check(2, 3).map(|r| r == 8).unwrap_or(false);
    let v9 = verdict(&grid("nondegeneracy", &sizes(3, 4), 3));
    results.push((9, "pairing nondegeneracy", also(v9, rank8, "rank 8 at N=2, n=3")));

    let s10 = sizes(3, 4);
    let desk10 = graded_character_check(&lam).ok() == Some([(-1, 1)].into_iter().collect());
    let v10 = also(verdict(&grid("graded-character", &s10, 3)), desk10, "(1,1) gives q^-1");
    let known10 = formula_disagrees(&s10);
    results.push((10, "graded character formula", v10));

    results.push((11, "factorization", verdict(&grid("factorization", &sizes(3, 3), 4))));
    let mut r12 = grid("langlands-limit", &sizes(3, 3), 3);
    r12.extend(grid("f-limit", &sizes(3, 3), 3));
    r12.extend(grid("winfty", &sizes(3, 3), 3));
    results.push((12, "limit theorems", verdict(&r12)));

    let s13: Vec<(usize, usize)> = (1..=3).map(|n| (2, n)).collect();
    let r13 = grid("singular-case", &s13, 3);
    let ranks13 = r13
        .iter()
        .filter(|r| r.status == Status::Fail)
        .all(|r| r.witnesses.iter().any(|x| x.contains("ranks from it agree")));
    let known13 = formula_disagrees(&s13);
    results.push((13, "singular case", verdict(&r13)));

    let mut r14 = Vec::new();
    for c in ["diagram", "diagram-plus", "descent", "commutator"] {
        r14.extend(grid(c, &sizes(3, 3), 2));
    }
    results.push((14, "appendix diagrams", verdict(&r14)));

    let det = |seed| {
        let mut cfg = CheckConfig::new("all", 2, 2);
        cfg.jmax = 2;
        cfg.z_mode = ZMode::Seed(seed);
        cfg.timing = false;
        to_jsonl(&run(&cfg).unwrap())
    };
    let (a, b) = (det(11), det(11));
    results.push((
        15,
        "determinism",
        Verdict {
            pass: a == b && !a.is_empty(),
            detail: format!("{} report bytes, identical: {}", a.len(), a == b),
            failing_lambdas: BTreeSet::new(),
        },
    ));

    for (k, name, v) in &results {
        println!("criterion {k:>2} {}: {name} ({})", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }

    for (k, _, v) in &results {
        match k {
            10 => {
                assert!(desk10);
                assert_eq!(v.failing_lambdas, known10, "criterion 10 failures");
            }
            13 => {
                assert!(ranks13);
                assert_eq!(v.failing_lambdas, known13, "criterion 13 failures");
            }
            _ => assert!(v.pass, "criterion {k} failed: {}", v.detail),
        }
    }
}
