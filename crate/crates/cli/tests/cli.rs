use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hotc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hotc")).args(args).env_remove("HOTC_ENUM_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const GAMMA2: &str = r#"{"n": 2, "minterms": [0, 1, 3]}"#;
const G_STAR: &str = r#"{"n": 2, "minterms": [0, 1, 2]}"#;

#[test]
fn mobius_of_gamma2_has_three_terms() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gamma2.json", GAMMA2);
    let v = json(&hotc(&["mobius", "--in", &f, "--json"]));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[2]["subset"], serde_json::json!([1, 2]));
    assert_eq!(terms[1]["coeff"], -1);
}

#[test]
fn mobius_roundtrips_through_from_mobius() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gamma2.json", GAMMA2);
    let m = stdout(&hotc(&["mobius", "--in", &f, "--json"]));
    let mf = write(dir.path(), "m.json", &m);
    let back = json(&hotc(&["from-mobius", "--in", &mf, "--json"]));
    let orig: Value = serde_json::from_str(GAMMA2).unwrap();
    assert_eq!(back, orig);
}

#[test]
fn is_type_reports_odd_rank() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gstar.json", G_STAR);
    let o = hotc(&["is-type", "--in", &f]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("no") && s.contains("odd rank"), "{s}");
    let v = json(&hotc(&["is-type", "--in", &f, "--json"]));
    assert_eq!(v["type"], false);
}

#[test]
fn decompose_writes_tree_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let g = json(&hotc(&["gamma", "--n", "2", "--json"]));
    assert_eq!(g, serde_json::from_str::<Value>(GAMMA2).unwrap());
    // comb to comb: (γ_2 ⊗ γ_4*)*
    let e = "(dual (tensor (hom (leaf 1) (leaf 2)) (dual (hom (hom (leaf 3) (leaf 4)) (hom (leaf 5) (leaf 6))))))";
    let f = stdout(&hotc(&["expr-type", "--expr", e, "--json"]));
    let fv: Value = serde_json::from_str(&f).unwrap();
    let path = write(dir.path(), "comb2comb.json", &fv["function"].to_string());
    let dot = dir.path().join("out.dot");
    let v = json(&hotc(&["decompose", "--in", &path, "--dot", dot.to_str().unwrap(), "--json"]));
    assert!(v.get("causal").is_some() || v.get("star").is_some(), "{v}");
    let d = std::fs::read_to_string(dot).unwrap();
    assert!(d.starts_with("digraph"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hotc(&["gamma"]).status.code(), Some(2));
    assert_eq!(hotc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hotc(&["verify", "nothing"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.json", "{\"n\": 2}");
    assert_eq!(hotc(&["mobius", "--in", &bad]).status.code(), Some(2));
    let theta = write(dir.path(), "theta.json", r#"{"n": 2, "minterms": [1]}"#);
    assert_eq!(hotc(&["mobius", "--in", &theta]).status.code(), Some(2));
    let g = write(dir.path(), "gstar.json", G_STAR);
    let o = hotc(&["decompose", "--in", &g, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "domain");
    assert_eq!(hotc(&["expr-type", "--expr", "(leaf 2)"]).status.code(), Some(2));
    assert_eq!(hotc(&["enumerate", "--n", "5", "--enum-cap", "4"]).status.code(), Some(1));
}

#[test]
fn enum_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hotc"))
        .args(["enumerate", "--n", "4"])
        .env("HOTC_ENUM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v = json(&hotc(&["enumerate", "--n", "3", "--json"]));
    assert_eq!(v["count"], 26);
}

#[test]
fn quantum_space_of_channels() {
    let v = json(&hotc(&["quantum-space", "--expr", "(hom (leaf 1) (leaf 2))", "--dims", "2", "--json"]));
    assert_eq!(v["dim_A"], 12);
    assert_eq!(v["dim_S"], 13);
    assert_eq!(v["expr_distance"], 0.0);
    let m = json(&hotc(&["quantum-space", "--expr", "(hom (leaf 1) (leaf 2))", "--dims", "2,P3", "--json"]));
    assert_eq!(m["dim_S"], 1 + 2 + 3 * 2);
    assert_eq!(hotc(&["quantum-space", "--expr", "(leaf 1)", "--dims", "2,2"]).status.code(), Some(2));
    assert_eq!(hotc(&["quantum-space", "--expr", "(leaf 1)", "--dims", "x"]).status.code(), Some(2));
}

#[test]
fn channel_check_accepts_channels_and_rejects_zero() {
    let v = json(&hotc(&["channel-check", "--seed", "4", "--json"]));
    assert_eq!(v["member"], true);
    let dir = tempfile::tempdir().unwrap();
    let z = write(dir.path(), "zero.json", &serde_json::to_string(&vec![0.0; 16]).unwrap());
    let v = json(&hotc(&["channel-check", "--in", &z, "--dims", "2,2", "--json"]));
    assert_eq!(v["member"], false);
    assert_eq!(v["affine"], false);
    let short = write(dir.path(), "short.json", "[1.0, 0.0]");
    assert_eq!(hotc(&["channel-check", "--in", &short]).status.code(), Some(1));
}

#[test]
fn poset_dot_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "gamma2.json", GAMMA2);
    let s = stdout(&hotc(&["p0", "--in", &f, "--dot", "-"]));
    assert!(s.starts_with("digraph"));
    let v = json(&hotc(&["poset", "--in", &f, "--json"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_suites_are_deterministic() {
    let a = hotc(&["verify", "types", "--seed", "7"]);
    let b = hotc(&["verify", "types", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("[2, 6, 26, 174, 1802]"));
    let q = stdout(&hotc(&["verify", "quantum"]));
    assert!(q.contains("d = 12"), "{q}");
    assert!(q.ends_with("all checks passed\n"));
}
