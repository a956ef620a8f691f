use std::process::{Command, Output};

fn qlocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlocal"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_affine_group() {
    let o = qlocal(&["classify", "--group", "catalog:AGL(3,2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["type"], "HA");
    assert_eq!(v["provisional"], false);
}

#[test]
fn classify_rejects_intransitive_group() {
    let spec = r#"{"constructor": "generators", "degree": 4, "generators": ["(0 1)"]}"#;
    let o = qlocal(&["classify", "--group", spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("reason: intransitive"));
}

#[test]
fn compat_check_certifies_incompatibility() {
    let o = qlocal(&[
        "compat-check",
        "--left",
        "catalog:SL(2,5):regular",
        "--right",
        "catalog:S5:regular",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reason"], "no common simple quotient");
    assert_eq!(v["verdict"], "incompatible");
}

#[test]
fn compat_check_passes_isomorphic_pair() {
    let o = qlocal(&["compat-check", "--left", "catalog:A5", "--right", "catalog:A5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: not excluded"));
}

#[test]
fn witness_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let o = qlocal(&["witness", "--problem", "examples/s3.json", "--digraph", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("verified: true"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 72);
}

#[test]
fn witness_budget_exhaustion_exits_3() {
    let o = qlocal(&["witness", "--problem", "examples/s3.json", "--strategy", "block", "--budget-search", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn same_seed_same_report() {
    for seed in ["0", "7"] {
        let a = qlocal(&["witness", "--problem", "examples/s3.json", "--seed", seed, "--json"]);
        let b = qlocal(&["witness", "--problem", "examples/s3.json", "--seed", seed, "--json"]);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), Some(0));
    }
}

#[test]
fn malformed_cycle_reports_position() {
    let spec = r#"{"constructor": "generators", "degree": 3, "generators": ["(0 1 x)"]}"#;
    let o = qlocal(&["analyze", "--group", spec]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at position"));
}

#[test]
fn group_spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.json");
    std::fs::write(&path, r#"{"constructor": "generators", "degree": 3, "generators": ["(0 1 2)"]}"#).unwrap();
    let o = qlocal(&["analyze", "--group", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"]["order"], 3);
    assert_eq!(v["group"]["degree"], 3);
}

#[test]
fn orbital_digraph_of_a5() {
    let o = qlocal(&["digraph", "--group", "catalog:A5", "--arc", "0,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["arcs"], 20);
    assert_eq!(v["outLocal"]["order"], 12);
    assert_eq!(v["localActionsIsomorphic"], "yes");
}

#[test]
fn digraph_from_json_without_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"vertices": 3, "arcs": [[0, 1], [1, 2], [2, 0]]}"#).unwrap();
    let o = qlocal(&["digraph", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("connectivity.strong: true"));
}

#[test]
fn digraph_needs_inputs() {
    assert_eq!(qlocal(&["digraph"]).status.code(), Some(1));
}

#[test]
fn catalog_lists_entries() {
    let o = qlocal(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("typedCorpus.AGL(3,2): HA"));
    assert_eq!(qlocal(&["catalog", "--name", "NoSuchGroup"]).status.code(), Some(1));
}
