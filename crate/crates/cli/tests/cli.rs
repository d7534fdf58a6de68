//! Exit codes and output shape of the `tcat` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn tcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcat")).args(args).output().expect("tcat runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = tcat(args);
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn fixtures_are_stored_canonically() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        let (code, out) = run(&["canonical", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{}", p.display());
        assert_eq!(out, text, "{} is not canonical", p.display());
    }
}

#[test]
fn passing_checks_exit_zero() {
    for args in [
        vec!["validate", "interval.json"],
        vec!["segal", "bar_z2.json"],
        vec!["copower", "list_operad.json"],
        vec!["comonad", "discrete_z2.json"],
        vec!["hom", "ordinal0.json", "interval.json"],
        vec!["two-cells", "interval.json", "interval.json"],
        vec!["compose", "interval.json", "ordinal2.json"],
        vec!["power-delta1", "interval.json"],
    ] {
        let mut full: Vec<String> = vec![args[0].into()];
        full.extend(args[1..].iter().map(|f| path(f)));
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let (code, out) = run(&refs);
        assert_eq!(code, 0, "{args:?}:\n{out}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn failing_checks_exit_one_with_a_witness() {
    let (code, out) = run(&["segal", &path("ordinal2_deleted.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL Segal at level 2: not surjective"), "{out}");

    let (code, out) = run(&["validate", &path("list_unclosed.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL CA1"), "{out}");
}

#[test]
fn infinite_carriers_exit_three() {
    let (code, _) = run(&["comonad", &path("list_operad.json")]);
    assert_eq!(code, 3);
    let (code, _) = run(&["power-delta1", &path("list_operad.json")]);
    assert_eq!(code, 3);
}

#[test]
fn malformed_documents_exit_two() {
    let dir = std::env::temp_dir().join(format!("tcat-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"monad\": {\"kind\": \"identity\"}, \"tcategory\": {\"objects\": [\"a\"], \"arrows\": [], \"colour\": 1}}").unwrap();
    let out = tcat(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn depth_flag_overrides_the_document() {
    let (_, out) = run(&["nerve", "--depth", "2", &path("interval.json")]);
    assert!(out.starts_with("nerve (depth 2)"), "{out}");
    assert!(out.contains("  nerve: 2 3 4\n"), "{out}");
}

#[test]
fn json_reports_parse() {
    let (code, out) = run(&["counts", "--json", &path("bar_z2.json")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"]["nerve"], serde_json::json!([1, 2, 4, 8]));
    assert_eq!(v["command"], "counts");
}
