use std::path::Path;
use std::process::{Command, Output};

fn twarrow(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twarrow")).args(args).current_dir(dir).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const EDGE: &str = r#"{
  "labels": {"0": "0", "1": "1"},
  "simplices": [
    [{"faces": [], "id": 0}, {"faces": [], "id": 1}],
    [{"faces": [{"base": 1, "word": []}, {"base": 0, "word": []}], "id": 0}]
  ],
  "top_dim": 1
}"#;

#[test]
fn json_export_is_bit_stable() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&twarrow(&["zoo", "build", "q", "--n", "1", "--json", "a.json"], d.path())), 0);
    assert_eq!(code(&twarrow(&["export", "json", "q", "--n", "1", "--out", "b.json"], d.path())), 0);
    let a = std::fs::read(d.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(d.path().join("b.json")).unwrap());
    assert_eq!(code(&twarrow(&["export", "json", "q", "--n", "1", "--out", "c.json"], d.path())), 0);
    assert_eq!(a, std::fs::read(d.path().join("c.json")).unwrap());
}

#[test]
fn dot_exports() {
    let d = tempfile::tempdir().unwrap();
    let tw = stdout(&twarrow(&["export", "dot", "tw", "--n", "1"], d.path()));
    assert_eq!(tw.matches("label=").count(), 3);
    assert_eq!(tw.matches("->").count(), 2);
    assert_eq!(tw.matches("style=bold").count(), 2);
    let r = stdout(&twarrow(&["export", "dot", "r-poset", "--n", "1"], d.path()));
    assert_eq!(r.matches("label=").count(), 12);
}

#[test]
fn tw_build_then_check() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("edge.json"), EDGE).unwrap();
    let o = twarrow(
        &["tw", "build", "--complex", "edge.json", "--max-dim", "3", "--out", "tw.json", "--projection", "p.json"],
        d.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = twarrow(&["check", "inner-fibration", "--map", "p.json", "--max-dim", "3"], d.path());
    assert_eq!(code(&o), 0);
    let o = twarrow(
        &["check", "cartesian", "--map", "p.json", "--marked", "tw.json", "--max-dim", "3", "--report", "r.json"],
        d.path(),
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report = std::fs::read_to_string(d.path().join("r.json")).unwrap();
    assert!(report.contains("\"verdict\": \"pass\""));
    assert_eq!(code(&twarrow(&["check", "cartesian", "--map", "p.json"], d.path())), 2);
}

#[test]
fn failed_check_exits_one_with_counterexample() {
    let d = tempfile::tempdir().unwrap();
    let target = r#"{"labels": {"0": "*"}, "simplices": [[{"faces": [], "id": 0}]], "top_dim": 0}"#;
    let images = r#"[[{"base": {"dim": 0, "idx": 0}, "word": []}, {"base": {"dim": 0, "idx": 0}, "word": []}],
                    [{"base": {"dim": 0, "idx": 0}, "word": [0]}]]"#;
    let map = format!(r#"{{"source": {EDGE}, "target": {target}, "images": {images}}}"#);
    std::fs::write(d.path().join("m.json"), map).unwrap();
    let o = twarrow(&["check", "trivial", "--map", "m.json", "--max-dim", "1", "--report", "r.json"], d.path());
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("∂Δ^1"));
    let report = std::fs::read_to_string(d.path().join("r.json")).unwrap();
    assert!(report.contains("\"verdict\": \"fail\""));
}

#[test]
fn certificates() {
    let d = tempfile::tempdir().unwrap();
    let ok = twarrow(&["certify", "pivot", "--dull", "0;3", "--n", "3", "--thin", "023,123", "--pivot", "auto"], d.path());
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("pivot 2"));
    let bad = twarrow(&["certify", "pivot", "--dull", "0;3", "--n", "3", "--thin", "012,123", "--pivot", "1"], d.path());
    assert_eq!(code(&bad), 1);
    let o = twarrow(&["certify", "paper", "--which", "fibstep1", "--n", "2", "--i", "1", "--out", "cert.json"], d.path());
    assert_eq!(code(&o), 0);
    assert_eq!(code(&twarrow(&["certify", "verify", "--cert", "cert.json"], d.path())), 0);
}

#[test]
fn poset_commands() {
    let d = tempfile::tempdir().unwrap();
    let o = twarrow(&["poset", "mapspace", "--j", "0", "--mode", "right"], d.path());
    assert!(stdout(&o).contains("[2, 1]"));
    let o = twarrow(&["poset", "mapspace", "--j1", "1,2", "--mode", "two-sided", "--json"], d.path());
    assert!(stdout(&o).contains("\"top_dim\": 1"));
    assert_eq!(code(&twarrow(&["poset", "descends", "--map", "r_beta", "--n", "1"], d.path())), 0);
    assert_eq!(code(&twarrow(&["poset", "descends", "--map", "wrong-B", "--n", "1"], d.path())), 1);
}

#[test]
fn suite_exit_codes_and_determinism() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&twarrow(&["suite", "--checks", "pivot", "--flat-q", "1"], d.path())), 1);
    let empty = twarrow(&["suite", "--checks", "", "--report", "empty.json"], d.path());
    assert_eq!(code(&empty), 0);
    let r = std::fs::read_to_string(d.path().join("empty.json")).unwrap();
    assert!(r.contains("\"checks\": []"));
    for name in ["a.json", "b.json"] {
        let o = twarrow(&["suite", "--checks", "spot-lifts,q-scaling", "--seed", "11", "--report", name], d.path());
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(d.path().join("a.json")).unwrap(), std::fs::read(d.path().join("b.json")).unwrap());
}

#[test]
fn dimension_cap_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_twarrow"))
        .args(["zoo", "build", "q", "--n", "2"])
        .env("TWARROW_DIM_CAP", "1")
        .current_dir(d.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}
