use std::process::Command;

use weylkit::harness::Report;

fn weylkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weylkit"))
}

#[test]
fn verify_core_writes_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = weylkit()
        .args(["verify", "--suite", "core", "--quiet", "--report"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = Report::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.all_passed());
    assert_eq!(report.summary.total, report.checks.len());
}

#[test]
fn impossible_tolerance_exits_one() {
    let out = weylkit()
        .args(["verify", "--suite", "core", "--tol", "core.clifford_square=1e-30"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL core.clifford_square"));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n_values": [1], "unknown_key": 3}"#).unwrap();
    for args in [
        vec!["verify".to_string(), "--suite".into(), "nonsense".into()],
        vec!["verify".into(), "--tol".into(), "no.such_check=1".into()],
        vec!["verify".into(), "--config".into(), bad.display().to_string()],
    ] {
        let out = weylkit().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_file_and_seed_are_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"suites": ["toeplitz"], "toeplitz_n": 128, "seed": 7}"#).unwrap();
    let path = dir.path().join("r.json");
    let out = weylkit()
        .args(["verify", "--quiet", "--config"])
        .arg(&cfg)
        .arg("--report")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = Report::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.config.seed, 7);
    assert_eq!(report.config.toeplitz_n, 128);
    assert!(report.checks.iter().all(|c| c.id.starts_with("toeplitz.")));
}

#[test]
fn export_field_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bott.csv");
    let out = weylkit()
        .args(["export", "field", "--field", "bott", "--points", "5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 25);
    assert!(text.starts_with("x0,x1,re_0_0,im_0_0"));
}

#[test]
fn toeplitz_demo_runs() {
    let out = weylkit().args(["demo", "toeplitz", "--n", "64"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("index"));
}
