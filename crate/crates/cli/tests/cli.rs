use std::process::{Command, Output};

use flagbethe_verify::{from_jsonl, Status};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("spawn verify")
}

#[test]
fn commutativity_small_grid_passes() {
    let out = verify(&[
        "run", "--check", "theorem-2.4-commutativity", "--N", "2", "--n", "2", "--jmax", "3", "--report", "-",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.anchor, "Theorem 2.4");
        assert_eq!(r.parameters["jmax"], "3");
        assert!(r.timing_ms.is_some());
    }
}

#[test]
fn unknown_check_is_usage_error() {
    let out = verify(&["run", "--check", "no-such-check", "--N", "2", "--n", "2", "--report", "-"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown check"));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_lambda_is_usage_error() {
    let out = verify(&["run", "--check", "pairing", "--N", "2", "--n", "3", "--lambda", "1,1", "--report", "-"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.jsonl"))).collect();
    for p in &paths {
        let out = verify(&[
            "run", "--check", "all", "--N", "2", "--n", "2", "--jmax", "2", "--z-mode", "seed=3", "--no-timing",
            "--report", p.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let reports = from_jsonl(std::str::from_utf8(&a).unwrap()).unwrap();
    assert!(reports.iter().all(|r| r.timing_ms.is_none()));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "check = \"central-action\"\nN = 2\nn = 2\nlambda = \"1,1\"\nz-mode = \"seed=9\"\njmax = 2\n")
        .unwrap();
    let out = verify(&["run", "--config", cfg.to_str().unwrap(), "--jmax", "3", "--report", "-"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(reports.len(), 1);
    let p = &reports[0].parameters;
    assert_eq!((p["jmax"].as_str(), p["z_mode"].as_str(), p["lambda"].as_str()), ("3", "seed=9", "(1,1)"));
}

#[test]
fn non_dominant_weight_is_skipped() {
    let out = verify(&["run", "--check", "graded-character", "--N", "2", "--n", "1", "--lambda", "0,1", "--report", "-"]);
    assert!(out.status.success());
    let reports = from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(reports[0].status, Status::Skipped);
}

#[test]
fn resource_limit_skips() {
    let out = verify(&["run", "--check", "kernel", "--N", "9", "--n", "2", "--report", "-"]);
    assert!(out.status.success());
    let reports = from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(reports[0].status, Status::Skipped);
    assert!(reports[0].summary.contains("resource limit"));
}

#[test]
fn list_shows_every_check() {
    let out = verify(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for id in [
        "theorem-2.4-commutativity",
        "corollary-3.7-graded-character",
        "equation-4.8-factorization",
        "theorem-4.5-langlands-limit",
        "appendix-A.1-diagram",
        "appendix-A.2-diagram",
    ] {
        assert!(text.contains(id), "{id}");
    }
}
