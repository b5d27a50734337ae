use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn catalog(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(rel)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsor")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn aut_examples() {
    for (g, aut, out) in [("s3", 6, 1), ("c2", 1, 1), ("d7", 42, 3)] {
        let o = run(&["aut", &catalog(&format!("groups/{g}.json"))]);
        assert_eq!(o.status.code(), Some(0));
        let r = json(&o);
        assert_eq!(r["aut_order"], aut, "{g}");
        assert_eq!(r["out_order"], out, "{g}");
        assert_eq!(r["schema"], 1);
    }
    let r = json(&run(&["aut", &catalog("groups/d7.json")]));
    assert_eq!(r["out"]["id"], "C3");
}

#[test]
fn analyze_examples() {
    let r = json(&run(&["analyze", &catalog("tori/s3_0.json")]));
    assert_eq!(r["formula"]["group"]["order"], 1);
    assert_eq!(r["index"], 2);

    let o = run(&["analyze", &catalog("tori/d4_id.json"), "--cross-validate"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&o)["hypotheses"]["trivial_center"], false);

    let r = json(&run(&["analyze", &catalog("tori/d7_id.json"), "--cross-validate"]));
    assert!(r["iso_witness"].is_array());
    assert_eq!(r["direct"]["out"]["order"], 6);
}

#[test]
fn seed_is_recorded() {
    let o = Command::new(env!("CARGO_BIN_EXE_torsor"))
        .args(["analyze", &catalog("tori/s3_0.json")])
        .env("TORSOR_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], "42");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"name":"x","degree":3,"generators":[[0,0,1]]}"#).unwrap();
    assert_eq!(run(&["aut", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, "{").unwrap();
    assert_eq!(run(&["aut", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["aut", "/nonexistent/group.json"]).status.code(), Some(2));
    assert_eq!(
        run(&["aut", &catalog("groups/a5.json"), "--cap-elements", "10"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["analyze", &catalog("tori/a5_id.json"), "--cross-validate", "--cap-enum", "10"]).status.code(),
        Some(3)
    );
}

#[test]
fn enum_relators_examples() {
    let p = catalog("presentations/s3.json");
    let o = run(&["enum-relators", &p, &catalog("presentations/s3_identity.json"), "--budget-len", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["word"], serde_json::json!([1]));
    assert!(lines.iter().all(|l| l["certified"] == true));

    let inner = catalog("presentations/s3_inner.json");
    let o = run(&["enum-relators", &p, &inner, "--budget-len", "3", "--model", &catalog("presentations/s3_model.json")]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains(r#"{"word":[2,2],"certified":true}"#));
    assert!(text.contains(r#"{"word":[1,1,1],"certified":true}"#));

    let o = run(&["enum-relators", &p, &inner, "--budget-len", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn iso_command() {
    let r = json(&run(&["iso", &catalog("groups/s3.json"), &catalog("presentations/s3_model.json")]));
    assert_eq!(r["isomorphic"], true);
    let r = json(&run(&["iso", &catalog("groups/c4.json"), &catalog("groups/c2xc2.json")]));
    assert_eq!(r["isomorphic"], false);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("r.json");
    let spec = catalog("tori/a4_outer.json");
    let o = run(&["analyze", &spec, "--cross-validate"]);
    run(&["analyze", &spec, "--cross-validate", "--out", path.to_str().unwrap()]);
    assert_eq!(fs::read(&path).unwrap(), o.stdout);
}
