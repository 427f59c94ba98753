//! The registry of checks and the cells each one expands into.

use std::collections::BTreeMap;
use std::sync::Arc;

use flagbethe_core::bethe::{
    all_pairs, asymptotic_sweep, central_action_check, commutativity_check, current_relations_check,
    expand_universal_operator, k_zero_commutation_check, sweep_converges, zone_span_matches, BetheFamily,
    KMode, SweepCell,
};
use flagbethe_core::cohomology::{
    graded_character_check, integrate_check, pairing_check, regular_representation_check, relation_check,
    show_laurent, xi_intertwining_check,
};
use flagbethe_core::geometric::{descent_check, diagram_check, rho_singular_check, serre_check, Direction};
use flagbethe_core::linalg::generic_point;
use flagbethe_core::quasiexp::{
    factorization_check, fundamental_diffop, kernel_check, langlands_limit_sweep, lemma_4_3_check,
    lemma_4_4_sweep, singular_case_check, wk_limit_sweep, QuasiExponentialFamily, Sign,
};
use flagbethe_core::tensor::Weight;
use flagbethe_core::{Error, Rat};

use crate::config::{CheckConfig, KModeSpec, ZMode};

/// A registered check.
#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub id: &'static str,
    pub alias: &'static str,
    pub anchor: &'static str,
    pub description: &'static str,
    pub(crate) cells: fn(&CheckConfig) -> Vec<Cell>,
}

pub const EXACT: &str = "exact";
pub const SCHWARTZ_ZIPPEL: &str = "probabilistic-exact (Schwartz–Zippel)";
pub const SWEEP: &str = "exact rational limit sweep";
pub const PAPER_UNPROVED: &str = "paper-unproved";

pub(crate) enum Outcome {
    Pass(String),
    Fail(Vec<String>),
    Skipped(String),
}

impl From<Result<String, Error>> for Outcome {
    fn from(r: Result<String, Error>) -> Self {
        match r {
            Ok(s) => Outcome::Pass(s),
            Err(e) => Outcome::Fail(vec![e.to_string()]),
        }
    }
}

type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

pub(crate) struct Cell {
    pub params: BTreeMap<String, String>,
    pub evidence: &'static str,
    pub flags: Vec<String>,
    pub job: Job,
}

impl Cell {
    fn new(params: &[(&str, String)], evidence: &'static str, job: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Cell {
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            evidence,
            flags: Vec::new(),
            job: Box::new(job),
        }
    }

    fn flagged(mut self, flag: &str) -> Self {
        self.flags.push(flag.to_string());
        self
    }
}

static CATALOG: &[CheckInfo] = &[
    CheckInfo {
        id: "section-2.3-current-relations",
        alias: "current-relations",
        anchor: "§2.3 (gl_N[t]-module structure on 𝕍)",
        description: "commutation relations of gl_N[t] hold on 𝕍_λ for r, s ≤ 3",
        cells: current_relations_cells,
    },
    CheckInfo {
        id: "theorem-2.4-commutativity",
        alias: "commutativity",
        anchor: "Theorem 2.4",
        description: "[B_ij, B_kl] = 0 on 𝕍_λ for all generators with j, l ≤ Jmax",
        cells: commutativity_cells,
    },
    CheckInfo {
        id: "section-2.4-k-zero-commutation",
        alias: "k-zero-commutation",
        anchor: "§2.4 (K = 0 case)",
        description: "B^{K=0}_ij commutes with gl_N on all of V^{⊗n}",
        cells: k_zero_cells,
    },
    CheckInfo {
        id: "lemma-2.5-asymptotics",
        alias: "asymptotics",
        anchor: "Lemma 2.5",
        description: "normalized B^K_ij tend to Σ_{m≥i} e_mm ⊗ t^{j−1} along zones",
        cells: asymptotics_cells,
    },
    CheckInfo {
        id: "lemma-2.7-central-action",
        alias: "central-action",
        anchor: "Lemma 2.7",
        description: "Σ_i e_ii ⊗ t^r acts as multiplication by Σ_s z_s^r, r ≤ 4",
        cells: central_cells,
    },
    CheckInfo {
        id: "lemma-3.2-relations",
        alias: "relations",
        anchor: "Lemma 3.2",
        description: "relations vanish at fixed points; i± images of the basis have rank d_λ",
        cells: relations_cells,
    },
    CheckInfo {
        id: "equation-3.2-localization",
        alias: "localization",
        anchor: "Eq. (3.2)",
        description: "localization of basis products is polynomial",
        cells: localization_cells,
    },
    CheckInfo {
        id: "corollary-3.3-pairing",
        alias: "pairing",
        anchor: "Corollary 3.3",
        description: "S+-(i+ h, i- g) equals the integral of h g",
        cells: pairing_cells,
    },
    CheckInfo {
        id: "theorem-3.4-xi-intertwining",
        alias: "xi-intertwining",
        anchor: "Theorem 3.4",
        description: "i± intertwine multiplication by Σ_j γ_ij^r with e_ii ⊗ t^r, r ≤ 4",
        cells: xi_cells,
    },
    CheckInfo {
        id: "theorem-3.4-regular-representation",
        alias: "regular-representation",
        anchor: "Theorem 3.4 (regular representation)",
        description: "multiplication matrices in H_λ equal the matching B^∞ matrices on transported bases",
        cells: regular_cells,
    },
    CheckInfo {
        id: "theorem-3.5-nondegeneracy",
        alias: "nondegeneracy",
        anchor: "Theorem 3.5",
        description: "the S+- pairing of the graded quotients has rank N^n",
        cells: nondegeneracy_cells,
    },
    CheckInfo {
        id: "corollary-3.7-graded-character",
        alias: "graded-character",
        anchor: "Corollary 3.7, Eq. (3.6)",
        description: "closed formula for the graded character of ((1/D)𝕍⁻/J⁻)^sing_λ",
        cells: character_cells,
    },
    CheckInfo {
        id: "corollary-3.8-rho-singular",
        alias: "rho-singular",
        anchor: "Corollary 3.8",
        description: "ρ⁻-singular part of H(ℂ) has the character of the tensor-side singular part",
        cells: rho_singular_cells,
    },
    CheckInfo {
        id: "equation-4.6-kernel",
        alias: "kernel",
        anchor: "Eq. (4.6)",
        description: "the quasi-exponentials lie in the kernel of the fundamental operator",
        cells: kernel_cells,
    },
    CheckInfo {
        id: "equation-4.8-factorization",
        alias: "factorization",
        anchor: "Eq. (4.8)",
        description: "the fundamental operator factorizes into first-order factors to order Jmax",
        cells: factorization_cells,
    },
    CheckInfo {
        id: "lemma-4.3-winfty",
        alias: "winfty",
        anchor: "Lemma 4.3, Eq. (4.10)",
        description: "η(A^∞_s) = σ_s(z) and A^K_s tend to A^∞_s along zones",
        cells: winfty_cells,
    },
    CheckInfo {
        id: "lemma-4.4-f-limit",
        alias: "f-limit",
        anchor: "Lemma 4.4",
        description: "normalized F^K_ij tend to their zone limits",
        cells: f_limit_cells,
    },
    CheckInfo {
        id: "theorem-4.5-langlands-limit",
        alias: "langlands-limit",
        anchor: "Theorems 4.5 and 4.8",
        description: "η∘τ^{K±} and η∘μ^{K±} tend to ξ± and (i±)⁻¹ along zones",
        cells: langlands_cells,
    },
    CheckInfo {
        id: "section-4.5-singular-case",
        alias: "singular-case",
        anchor: "§4.5, Theorems 4.9 and 4.10",
        description: "lowest singular vector and degreewise relations of B^{K=0} v⁻ versus F_ij",
        cells: singular_cells,
    },
    CheckInfo {
        id: "appendix-A.1-diagram",
        alias: "diagram",
        anchor: "Theorem A.1",
        description: "ρ⁻ raising and lowering operators commute with i⁻, j ≤ 2",
        cells: diagram_minus_cells,
    },
    CheckInfo {
        id: "appendix-A.2-diagram",
        alias: "diagram-plus",
        anchor: "Theorem A.2",
        description: "ρ⁺ raising and lowering operators commute with i⁺, j ≤ 2",
        cells: diagram_plus_cells,
    },
    CheckInfo {
        id: "appendix-A-descent",
        alias: "descent",
        anchor: "Appendix (descent to H(ℂ))",
        description: "ρ± are linear over symmetric functions of z and descend modulo J_H",
        cells: descent_cells,
    },
    CheckInfo {
        id: "appendix-A-commutator",
        alias: "commutator",
        anchor: "Appendix (transported gl_N relation)",
        description: "[ρ(e_{a,a+1}⊗t^r), ρ(e_{a+1,a}⊗t^p)] acts as the diagonal current",
        cells: commutator_cells,
    },
];

pub fn list_checks() -> &'static [CheckInfo] {
    CATALOG
}

/// Look up by id or alias.
pub fn find_check(name: &str) -> Option<&'static CheckInfo> {
    CATALOG.iter().find(|c| c.id == name || c.alias == name)
}

fn lam(l: &Weight) -> (&'static str, String) {
    ("lambda", l.to_string())
}

fn zones(n_big: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n_big).collect();
    let rev: Vec<usize> = id.iter().rev().copied().collect();
    if rev == id {
        vec![id]
    } else {
        vec![id, rev]
    }
}

fn zone_label(sigma: &[usize]) -> String {
    let s: Vec<String> = sigma.iter().map(|k| (k + 1).to_string()).collect();
    format!("[{}]", s.join(","))
}

const DECADES: [i64; 3] = [100, 1000, 10000];

fn scales(cfg: &CheckConfig, default: [i64; 3]) -> Vec<Rat> {
    match &cfg.k_mode {
        KModeSpec::Zone(v) => v.clone(),
        _ => default.into_iter().map(Rat::from_int).collect(),
    }
}

/// `K` for non-sweep checks; zone mode leaves `K` symbolic.
fn k_mode(cfg: &CheckConfig) -> KMode {
    match &cfg.k_mode {
        KModeSpec::Values(v) => KMode::Values(v.clone()),
        _ => KMode::Symbolic,
    }
}

fn z_point(cfg: &CheckConfig) -> Option<Vec<Rat>> {
    match cfg.z_mode {
        ZMode::Symbolic => None,
        ZMode::Seed(s) => Some(generic_point(cfg.n, s)),
    }
}

/// Sweeps always need numbers; symbolic mode uses seed 0.
fn sweep_point(cfg: &CheckConfig) -> Vec<Rat> {
    z_point(cfg).unwrap_or_else(|| generic_point(cfg.n, 0))
}

fn count(r: flagbethe_core::Result<usize>, what: &str) -> Outcome {
    r.map(|c| format!("{c} {what}")).into()
}

fn per_weight(weights: Vec<Weight>, f: impl Fn(Weight) -> Outcome + Send + Sync + Clone + 'static) -> Vec<Cell> {
    weights
        .into_iter()
        .map(|l| {
            let f = f.clone();
            let w = l.clone();
            Cell::new(&[lam(&l)], EXACT, move || f(w.clone()))
        })
        .collect()
}

/// Dominant weights only; an explicitly requested non-dominant `λ` gives a
/// skipped cell.
fn per_dominant(cfg: &CheckConfig, f: impl Fn(Weight) -> Outcome + Send + Sync + Clone + 'static) -> Vec<Cell> {
    match &cfg.lambda {
        Some(l) if !l.is_dominant() => {
            let msg = format!("{l} is not dominant");
            vec![Cell::new(&[lam(l)], EXACT, move || Outcome::Skipped(msg.clone()))]
        }
        _ => per_weight(cfg.dominant_weights(), f),
    }
}

fn current_relations_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| count(current_relations_check(&l, 3), "relation instances"))
}

fn family(cfg: &CheckConfig, mode: KMode) -> Result<Arc<BetheFamily>, String> {
    expand_universal_operator(cfg.n_big, cfg.jmax, mode)
        .map(Arc::new)
        .map_err(|e| e.to_string())
}

fn commutativity_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let fam = family(cfg, k_mode(cfg));
    let z = z_point(cfg);
    let evidence = if z.is_some() { SCHWARTZ_ZIPPEL } else { EXACT };
    let pairs = all_pairs(cfg.n_big, cfg.jmax);
    cfg.weights()
        .into_iter()
        .map(|l| {
            let (fam, z, pairs, w) = (fam.clone(), z.clone(), pairs.clone(), l.clone());
            Cell::new(&[lam(&l)], evidence, move || match &fam {
                Err(e) => Outcome::Fail(vec![format!("expansion failed: {e}")]),
                Ok(f) => count(commutativity_check(f, &w, &pairs, z.as_deref()), "commuting pairs"),
            })
        })
        .collect()
}

fn k_zero_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let (nb, n, jmax) = (cfg.n_big, cfg.n, cfg.jmax);
    vec![Cell::new(&[], EXACT, move || {
        count(k_zero_commutation_check(nb, n, jmax), "commutations on basis vectors")
    })]
}

/// Render a sweep and judge it against the per-decade band.
fn sweep_outcome(cells: flagbethe_core::Result<Vec<SweepCell>>, max_rate: Option<f64>) -> Outcome {
    let cells = match cells {
        Ok(c) => c,
        Err(e) => return Outcome::Fail(vec![e.to_string()]),
    };
    let mut worst: Vec<(String, f64)> = Vec::new();
    for c in &cells {
        match worst.iter_mut().find(|(s, _)| *s == c.scale) {
            Some((_, d)) => *d = d.max(c.discrepancy),
            None => worst.push((c.scale.clone(), c.discrepancy)),
        }
    }
    let table: Vec<String> = worst
        .iter()
        .enumerate()
        .map(|(k, (s, d))| {
            let ratio = if k == 0 {
                String::new()
            } else {
                let prev = worst[k - 1].1;
                if *d == 0.0 {
                    " (exact)".to_string()
                } else {
                    format!(" (ratio {:.3})", prev / d)
                }
            };
            format!("c={s}: {d:.6e}{ratio}")
        })
        .collect();
    let summary = format!("{} cells; worst per scale: {}", cells.len(), table.join(", "));
    match sweep_converges(&cells, max_rate) {
        Ok(()) => Outcome::Pass(summary),
        Err(msg) => Outcome::Fail(vec![msg, summary]),
    }
}

fn asymptotics_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let fam = family(cfg, KMode::Symbolic);
    let z = sweep_point(cfg);
    let sc = scales(cfg, DECADES);
    let (nb, jmax) = (cfg.n_big, cfg.jmax);
    let mut out = Vec::new();
    for l in cfg.weights() {
        for sigma in zones(cfg.n_big) {
            let (fam, z, sc, w, s) = (fam.clone(), z.clone(), sc.clone(), l.clone(), sigma.clone());
            out.push(Cell::new(&[lam(&l), ("zone", zone_label(&sigma))], SWEEP, move || {
                let f = match &fam {
                    Ok(f) => f,
                    Err(e) => return Outcome::Fail(vec![format!("expansion failed: {e}")]),
                };
                match zone_span_matches(nb, jmax, &s, &w, &z) {
                    Ok(true) => {}
                    Ok(false) => return Outcome::Fail(vec!["zone limits do not span the diagonal currents".into()]),
                    Err(e) => return Outcome::Fail(vec![e.to_string()]),
                }
                sweep_outcome(asymptotic_sweep(f, &w, &s, &sc, &z), Some(20.0))
            }));
        }
    }
    out
}

fn central_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| {
        central_action_check(&l, 4).map(|()| "r = 0..4".to_string()).into()
    })
}

fn relations_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| count(relation_check(&l), "= rank of i± images"))
}

fn localization_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| count(integrate_check(&l), "products integrated"))
}

fn pairing_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| count(pairing_check(&l), "basis pairs"))
}

fn xi_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| count(xi_intertwining_check(&l, 4), "generator-class pairs"))
}

fn regular_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_weight(cfg.weights(), |l| count(regular_representation_check(&l), "matrix entries"))
}

fn nondegeneracy_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let (nb, n) = (cfg.n_big, cfg.n);
    vec![Cell::new(&[], EXACT, move || {
        count(flagbethe_core::cohomology::nondegeneracy_check(nb, n), "= total rank")
    })]
}

fn character_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_dominant(cfg, |l| {
        graded_character_check(&l).map(|c| show_laurent(&c)).into()
    })
}

fn rho_singular_cells(cfg: &CheckConfig) -> Vec<Cell> {
    per_dominant(cfg, |l| {
        rho_singular_check(&l)
            .map(|c| {
                let ch = c.into_iter().map(|(k, d)| (k, d as i64)).collect();
                show_laurent(&ch)
            })
            .into()
    })
}

fn qe_family(l: &Weight, mode: &KMode) -> Result<QuasiExponentialFamily, Error> {
    QuasiExponentialFamily::generic(l, mode)
}

fn kernel_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let (mode, jmax) = (k_mode(cfg), cfg.jmax);
    per_weight(cfg.weights(), move |l| {
        let r = qe_family(&l, &mode).and_then(|f| {
            let op = fundamental_diffop(&f, jmax)?;
            kernel_check(&f, &op)
        });
        r.map(|()| format!("to order u^-{jmax}")).into()
    })
}

fn factorization_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let (mode, jmax) = (k_mode(cfg), cfg.jmax);
    per_weight(cfg.weights(), move |l| {
        let r = qe_family(&l, &mode).and_then(|f| factorization_check(&f, jmax));
        r.map(|()| format!("to order u^-{jmax}")).into()
    })
}

fn winfty_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let sc = scales(cfg, DECADES);
    let mut out = per_weight(cfg.weights(), |l| count(lemma_4_3_check(&l), "identities"));
    for l in cfg.weights() {
        for sigma in zones(cfg.n_big) {
            let (w, s, sc) = (l.clone(), sigma.clone(), sc.clone());
            // A^K − A^∞ is O(1/c²): no upper bound on the rate
            out.push(Cell::new(&[lam(&l), ("zone", zone_label(&sigma))], SWEEP, move || {
                sweep_outcome(wk_limit_sweep(&w, &s, &sc), None)
            }));
        }
    }
    out
}

fn f_limit_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let sc = scales(cfg, DECADES);
    let jmax = cfg.jmax;
    let mut out = Vec::new();
    for l in cfg.weights() {
        for sigma in zones(cfg.n_big) {
            let (w, s, sc) = (l.clone(), sigma.clone(), sc.clone());
            out.push(Cell::new(&[lam(&l), ("zone", zone_label(&sigma))], SWEEP, move || {
                sweep_outcome(lemma_4_4_sweep(&w, &s, &sc, jmax), Some(20.0))
            }));
        }
    }
    out
}

fn langlands_cells(cfg: &CheckConfig) -> Vec<Cell> {
    // large λ_i are not yet asymptotic at c = 100
    let sc = scales(cfg, [1000, 10000, 100000]);
    let z = sweep_point(cfg);
    let jmax = cfg.jmax;
    let mut out = Vec::new();
    for l in cfg.weights() {
        for sign in [Sign::Plus, Sign::Minus] {
            for sigma in zones(cfg.n_big) {
                let (w, s, sc, z) = (l.clone(), sigma.clone(), sc.clone(), z.clone());
                let params = [lam(&l), ("sign", sign.to_string()), ("zone", zone_label(&sigma))];
                out.push(Cell::new(&params, SWEEP, move || {
                    sweep_outcome(langlands_limit_sweep(&w, sign, &s, &sc, jmax, &z), Some(20.0))
                }));
            }
        }
    }
    out
}

fn singular_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let bound = cfg.degree_bound;
    per_dominant(cfg, move |l| {
        singular_case_check(&l, bound)
            .map(|r| {
                let ranks: Vec<String> = r
                    .degrees
                    .iter()
                    .map(|d| format!("{}:{}/{}", d.degree, d.bethe_rank, d.sigma_rank))
                    .collect();
                format!(
                    "v⁻ in degree {} (dim {}); ranks by degree {}",
                    r.singular_degree,
                    r.singular_dim,
                    ranks.join(" ")
                )
            })
            .into()
    })
}

fn diagram_cells(cfg: &CheckConfig, sign: Sign) -> Vec<Cell> {
    let mut out = Vec::new();
    let jtop = cfg.jmax.min(2) as u32;
    for l in cfg.weights() {
        for a in 1..cfg.n_big {
            for dir in [Direction::Raise, Direction::Lower] {
                for j in 0..=jtop {
                    let w = l.clone();
                    let params = [
                        lam(&l),
                        ("a", a.to_string()),
                        ("direction", dir.to_string()),
                        ("j", j.to_string()),
                    ];
                    let cell = Cell::new(&params, EXACT, move || {
                        diagram_check(sign, dir, a, j, &w)
                            .map(|r| {
                                if r.nonempty_target {
                                    format!("{} basis classes", r.classes)
                                } else {
                                    "empty target: both sides vanish".to_string()
                                }
                            })
                            .into()
                    });
                    out.push(if sign == Sign::Plus { cell.flagged(PAPER_UNPROVED) } else { cell });
                }
            }
        }
    }
    out
}

fn diagram_minus_cells(cfg: &CheckConfig) -> Vec<Cell> {
    diagram_cells(cfg, Sign::Minus)
}

fn diagram_plus_cells(cfg: &CheckConfig) -> Vec<Cell> {
    diagram_cells(cfg, Sign::Plus)
}

fn descent_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    let jtop = cfg.jmax.min(2) as u32;
    for l in cfg.weights() {
        for sign in [Sign::Plus, Sign::Minus] {
            for a in 1..cfg.n_big {
                for dir in [Direction::Raise, Direction::Lower] {
                    for j in 0..=jtop {
                        let w = l.clone();
                        let params = [
                            lam(&l),
                            ("sign", sign.to_string()),
                            ("a", a.to_string()),
                            ("direction", dir.to_string()),
                            ("j", j.to_string()),
                        ];
                        let cell = Cell::new(&params, EXACT, move || {
                            count(descent_check(sign, dir, a, j, &w), "basis classes")
                        });
                        out.push(if sign == Sign::Plus { cell.flagged(PAPER_UNPROVED) } else { cell });
                    }
                }
            }
        }
    }
    out
}

fn commutator_cells(cfg: &CheckConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for l in cfg.weights() {
        for sign in [Sign::Plus, Sign::Minus] {
            for a in 1..cfg.n_big {
                for (r, p) in [(0u32, 0u32), (0, 1), (1, 0), (1, 1)] {
                    let w = l.clone();
                    let params = [
                        lam(&l),
                        ("sign", sign.to_string()),
                        ("a", a.to_string()),
                        ("r", r.to_string()),
                        ("p", p.to_string()),
                    ];
                    out.push(Cell::new(&params, EXACT, move || {
                        count(serre_check(sign, a, r, p, &w), "basis classes")
                    }));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_consistent() {
        let cat = list_checks();
        assert!(cat.len() >= 15);
        assert!(find_check("theorem-3.4-xi-intertwining").is_some());
        assert!(find_check("appendix-A.1-diagram").is_some());
        assert_eq!(find_check("commutativity").unwrap().id, "theorem-2.4-commutativity");
        for (k, a) in cat.iter().enumerate() {
            for b in &cat[k + 1..] {
                assert_ne!(a.id, b.id);
                assert_ne!(a.alias, b.alias);
                assert_ne!(a.alias, b.id);
            }
        }
    }

    #[test]
    fn zones_are_distinct() {
        assert_eq!(zones(1), vec![vec![0]]);
        assert_eq!(zones(3), vec![vec![0, 1, 2], vec![2, 1, 0]]);
        assert_eq!(zone_label(&[2, 0, 1]), "[3,1,2]");
    }
}
