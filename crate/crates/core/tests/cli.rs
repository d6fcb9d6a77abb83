use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const TRIANGLE_ONE_FACET: &str = r#"{"complex":{"dims":[
  {"simplices":[{"faces":[]},{"faces":[]},{"faces":[]}]},
  {"simplices":[{"faces":[1,0]},{"faces":[2,0]},{"faces":[2,1]}]},
  {"simplices":[{"faces":[2,1,0]}]}]},
  "dim":2,"facets":[[[0,0],[0,1],[1,0]]]}"#;

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = strata(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&strata(&["validate", "pentagon"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"complex\": [");
    let o = strata(&["validate", &bad]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed"));
    let not_nice = write(dir.path(), "tri.json", TRIANGLE_ONE_FACET);
    let o = strata(&["validate", &not_nice, "--json"]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nice"]["ok"], false);
    assert_eq!(code(&strata(&["groups", &not_nice])), 3);
    assert_eq!(code(&strata(&["validate", "no/such/file.json"])), 1);
}

#[test]
fn groups_by_law() {
    assert_eq!(json(&["groups", "interval", "--complex"])["betti"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(json(&["groups", "interval", "--real"])["betti"], serde_json::json!([1, 1]));
    assert_eq!(json(&["groups", "interval", "--law", "2,2"])["betti"], serde_json::json!([1, 0, 0, 0, 0, 1]));
    assert_eq!(code(&strata(&["groups", "interval", "--law", "1,1,1"])), 3);
    assert_eq!(code(&strata(&["groups", "interval", "--law", "1,x"])), 2);
    let text = String::from_utf8(strata(&["groups", "mobius", "--real"]).stdout).unwrap();
    assert!(text.contains("H^2 = ℤ/2"), "{text}");
    let coarse = json(&["groups", "square", "--partition", "coarse", "--complex"]);
    assert_eq!(coarse["partition"], "1,3|2,4");
    assert_eq!(code(&strata(&["groups", "mobius", "--partition", "coarse"])), 3);
    assert_eq!(code(&strata(&["groups", "square", "--partition", "1,2|3"])), 3);
}

#[test]
fn compare_and_face_ring() {
    let v = json(&["compare", "pentagon", "--complex"]);
    assert_eq!(v["ok"], true);
    assert_eq!(code(&strata(&["compare", "annulus", "--real", "--coeff", "z2"])), 0);
    let f = json(&["face-ring", "triangle", "--sr-check", "--truncate", "10"]);
    assert_eq!(f["stanley_reisner"]["status"], "applicable");
    assert_eq!(f["stanley_reisner"]["equal"], true);
    let a = json(&["face-ring", "annulus", "--sr-check"]);
    assert_eq!(a["stanley_reisner"]["status"], "not_applicable");
    assert_eq!(a["truncation"], 20);
    assert_eq!(json(&["face-ring", "mobius", "--coeff", "z2"])["truncation"], 10);
}

#[test]
fn oracle_and_ring() {
    // the real moment-angle manifold over the Möbius band is a Klein bottle
    let k = json(&["oracle", "mobius", "--real", "--ring", "--coeff", "z2"]);
    assert_eq!(k["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(k["multiplication_ranks"]["1,1"], 1);
    let r = json(&["ring", "mobius", "--real", "--coeff", "z2"]);
    assert_eq!(r["multiplication_ranks"], k["multiplication_ranks"]);
    let s = json(&["ring", "square"]);
    assert_eq!(s["poincare_polynomial"], serde_json::json!([1, 0, 0, 2, 0, 0, 1]));
    assert_eq!(code(&strata(&["oracle", "interval", "--ring"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(["oracle", "hexagon", "--complex"])
        .env("STRATA_CELL_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn corpus_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pentagon.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&strata(&["corpus", "polygon(5)", "-o", p])), 0);
    let v = json(&["validate", p]);
    assert_eq!(v["facets"], 5);
    assert_eq!(v["nice"]["ok"], true);
    assert_eq!(json(&["groups", p])["betti"], json(&["groups", "pentagon"])["betti"]);
    assert_eq!(code(&strata(&["corpus", "klein"])), 2);
    let list = String::from_utf8(strata(&["corpus", "--list"]).stdout).unwrap();
    assert!(list.contains("torus_minus_disk"));
    assert_eq!(json(&["validate", "annulus"])["facets"], 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["ring", "hexagon", "--real", "--json"];
    let a = strata(&args).stdout;
    let b = strata(&args).stdout;
    let mut single = vec!["--jobs", "1"];
    single.extend(args);
    let c = strata(&single).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn in_process_entry_point() {
    let (code, out, err) = strata::cli::run_args(["strata", "groups", "interval", "--real"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("Betti numbers [1, 1]"));
    let (code, _, err) = strata::cli::run_args(["strata", "groups"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}
