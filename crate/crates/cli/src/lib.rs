//! Verification harness: runs named checks over parameter grids and writes
//! one report record per cell.

pub mod catalog;
pub mod config;
pub mod report;

use std::time::Instant;

use rayon::prelude::*;

pub use catalog::{find_check, list_checks, CheckInfo};
pub use config::{CheckConfig, KModeSpec, PartialConfig, ZMode};
pub use report::{from_jsonl, to_jsonl, write_report, CheckReport, Status};

use catalog::{Cell, Outcome};

/// Invalid configuration or unknown check name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("usage error: {0}")]
pub struct UsageError(pub String);

/// Grid limits beyond which cells are skipped instead of run.
pub const MAX_N: usize = 4;
pub const MAX_SMALL_N: usize = 6;
pub const MAX_JMAX: usize = 8;

fn resource_limit(cfg: &CheckConfig) -> Option<String> {
    if cfg.n_big > MAX_N {
        return Some(format!("N = {} exceeds the limit {MAX_N}", cfg.n_big));
    }
    if cfg.n > MAX_SMALL_N {
        return Some(format!("n = {} exceeds the limit {MAX_SMALL_N}", cfg.n));
    }
    if cfg.jmax > MAX_JMAX {
        return Some(format!("Jmax = {} exceeds the limit {MAX_JMAX}", cfg.jmax));
    }
    None
}

fn global_params(cfg: &CheckConfig) -> Vec<(String, String)> {
    vec![
        ("N".into(), cfg.n_big.to_string()),
        ("n".into(), cfg.n.to_string()),
        ("jmax".into(), cfg.jmax.to_string()),
        ("k_mode".into(), cfg.k_mode.to_string()),
        ("z_mode".into(), cfg.z_mode.to_string()),
        ("degree_bound".into(), cfg.degree_bound.to_string()),
    ]
}

/// The checks selected by `cfg.check` (`all` selects every check).
pub fn selected_checks(cfg: &CheckConfig) -> Result<Vec<&'static CheckInfo>, UsageError> {
    if cfg.check == "all" {
        return Ok(list_checks().iter().collect());
    }
    find_check(&cfg.check)
        .map(|c| vec![c])
        .ok_or_else(|| UsageError(format!("unknown check {:?}; see `verify list`", cfg.check)))
}

/// Run the selected checks. Cells run in parallel; the result is sorted by
/// check id and parameters.
pub fn run(cfg: &CheckConfig) -> Result<Vec<CheckReport>, UsageError> {
    let checks = selected_checks(cfg)?;
    let globals = global_params(cfg);
    let mut jobs: Vec<(&'static CheckInfo, Cell)> = Vec::new();
    let mut reports = Vec::new();
    for info in checks {
        if let Some(reason) = resource_limit(cfg) {
            let mut parameters: std::collections::BTreeMap<String, String> = globals.iter().cloned().collect();
            if let Some(l) = &cfg.lambda {
                parameters.insert("lambda".into(), l.to_string());
            }
            reports.push(CheckReport {
                check: info.id.to_string(),
                anchor: info.anchor.to_string(),
                parameters,
                status: Status::Skipped,
                evidence: String::new(),
                flags: Vec::new(),
                summary: format!("resource limit: {reason}"),
                witnesses: Vec::new(),
                timing_ms: None,
            });
            continue;
        }
        for cell in (info.cells)(cfg) {
            jobs.push((info, cell));
        }
    }
    let timing = cfg.timing;
    let ran: Vec<CheckReport> = jobs
        .into_par_iter()
        .map(|(info, cell)| {
            let start = Instant::now();
            let outcome = (cell.job)();
            let elapsed = start.elapsed().as_millis() as u64;
            let mut parameters: std::collections::BTreeMap<String, String> = globals.iter().cloned().collect();
            parameters.extend(cell.params);
            let (status, summary, witnesses) = match outcome {
                Outcome::Pass(s) => (Status::Pass, s, Vec::new()),
                Outcome::Fail(w) => (Status::Fail, String::new(), w),
                Outcome::Skipped(s) => (Status::Skipped, s, Vec::new()),
            };
            CheckReport {
                check: info.id.to_string(),
                anchor: info.anchor.to_string(),
                parameters,
                status,
                evidence: cell.evidence.to_string(),
                flags: cell.flags,
                summary,
                witnesses,
                timing_ms: timing.then_some(elapsed),
            }
        })
        .collect();
    reports.extend(ran);
    reports.sort_by_key(CheckReport::sort_key);
    Ok(reports)
}

/// `true` when no cell failed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}
