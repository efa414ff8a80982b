use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superdirac"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("SUPERDIRAC_WORKERS", "2").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn osp12_small_block_passes() {
    let o = run(&["verify-osp12", "--m", "3", "--n", "1", "--deg", "2", "--spin-cut", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
    assert_eq!(v["suite"], "verify-osp12");
}

#[test]
fn fischer_singular_exits_one() {
    let o = run(&["fischer", "--m", "4", "--n", "2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("FischerSingular: k = 1 − M/2"), "{err}");
    assert!(stdout(&o).contains("FischerSingular"));
}

#[test]
fn classical_monogenics_dimension() {
    let o = run(&["monogenics", "--m", "3", "--n", "0", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"dim\": 6"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["fischer", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["fischer", "--m", "0", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["fischer", "--m", "3", "--k", "4..1"]).status.code(), Some(2));
    assert_eq!(run(&["check", "X(1) *"]).status.code(), Some(2));
    assert_eq!(run(&["check", "X(9) == 0", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-suite"]).status.code(), Some(2));
}

#[test]
fn check_reports_witness_on_failure() {
    let o = run(&["check", "dirac == vector", "--m", "3", "--n", "1", "--deg", "1", "--spin-cut", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"][0]["data"]["witness"].is_object());
}

#[test]
fn reports_are_deterministic() {
    let args = ["singular", "--m", "3", "--n", "1", "--k", "0..1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_text_formats() {
    let o = run(&["casimir", "--m", "3", "--n", "1", "--k", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("suite,params,name,anchor,status,data\n"));
    assert!(s.lines().nth(1).unwrap().starts_with("casimir,"));
    let o = run(&["pi-power", "--m", "3", "--n", "1", "--k-max", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pi-power "));
}

#[test]
fn small_m_is_skipped_not_passed_silently() {
    let o = run(&["casimir", "--m", "2", "--n", "1", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"skipped\""));
}

#[test]
fn sweep_resumes_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest: PathBuf = dir.path().join("cells.jsonl");
    let out = dir.path().join("report.json");
    let args = |k: &str| {
        vec![
            "monogenics".to_string(),
            "--m".into(),
            "3".into(),
            "--n".into(),
            "0..1".into(),
            "--k".into(),
            k.into(),
            "--manifest".into(),
            manifest.to_str().unwrap().into(),
            "--out".into(),
            out.to_str().unwrap().into(),
        ]
    };
    let o = bin().args(args("0..1")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&manifest).unwrap().lines().count(), 4);
    let first = std::fs::read_to_string(&out).unwrap();

    let o = bin().args(args("0..2")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&manifest).unwrap().lines().count(), 6);
    let second: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(second.as_array().unwrap().len(), 6);

    let o = bin().args(args("0..1")).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn list_ops_is_json() {
    let o = run(&["list-ops", "--m", "3", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!v["operators"].as_array().unwrap().is_empty());
}
