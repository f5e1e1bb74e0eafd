use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn picard(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_picard"));
    c.args(args).env_remove("PICARD_COUNT_CACHE").env_remove("PICARD_BUDGET");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn fermat_invariants_add_up() {
    let o = picard(&["fermat", "5"], &[]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["rho"], 37);
    assert_eq!(v["b2"], 53);
    let o = picard(&["fermat", "5", "--mod-p", "19"], &[]);
    let v = json(&o);
    assert_eq!(v["rho"], 53);
    assert_eq!(v["supersingular_witness"], 1);
}

#[test]
fn h_set_of_the_rho13_quintic() {
    let o = picard(&["hset", "x5 + y5 + xzw3 + z4w", "9,11,10"], &[]);
    assert!(o.status.success());
    let v = json(&o);
    let want: Vec<i64> = vec![3, 19, 24, 27, 29, 37, 38, 39, 42, 47, 48, 53, 54];
    assert_eq!(v["residues"], serde_json::json!(want));
    // not an invariant character of this surface
    let o = picard(&["hset", "quintic-rho13", "1,1,1"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(picard(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(picard(&["delsarte", "x5 + y5"], &[]).status.code(), Some(2));
    assert_eq!(picard(&["fermat", "1"], &[]).status.code(), Some(2));
    assert_eq!(picard(&["lift", "no-such-fixture"], &[]).status.code(), Some(2));
}

#[test]
fn tampered_lifting_fixture_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let all: Vec<Value> =
        serde_json::from_str(include_str!("../../core/fixtures/lifting.json")).unwrap();
    let mut f = all.into_iter().find(|f| f["name"] == "double-sextic-tritangent").unwrap();
    let path = dir.path().join("lift.json");
    std::fs::write(&path, f.to_string()).unwrap();
    let o = picard(&["lift", path.to_str().unwrap()], &[]);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["match"], true);

    f["expected"]["max_order"] = 2.into();
    std::fs::write(&path, f.to_string()).unwrap();
    let o = picard(&["lift", path.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)[0]["match"], false);
}

#[test]
fn counts_of_the_fermat_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("cubic.json");
    std::fs::write(
        &model,
        r#"{"kind": "projective", "variables": ["x", "y", "z", "w"],
            "polynomial": "x^3 + y^3 + z^3 + w^3", "automorphism": [["x", "y"], ["y", "x"]]}"#,
    )
    .unwrap();
    let m = model.to_str().unwrap();
    // all 27 lines over F_4: q² + 7q + 1
    let o = picard(&["count", m, "--p", "2", "--k", "2"], &[]);
    assert_eq!(json(&o)["count"], 45);
    let o = picard(&["count", m, "--p", "2", "--k", "2", "--twist", "0"], &[]);
    assert_eq!(json(&o)["count"], 45);
    // Frob(P) = σ(P) with σ swapping x, y: a quadric twist of the same count
    let o = picard(&["count", m, "--p", "2", "--k", "1", "--twist", "1"], &[]);
    assert!(o.status.success());
}

#[test]
fn charpoly_from_traces() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = dir.path().join("r.json");
    std::fs::write(&recipe, r#"{"model": "traces", "dim": 2, "q": 5, "traces": [10]}"#).unwrap();
    let o = picard(&["charpoly", recipe.to_str().unwrap()], &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let c = v["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0]["coefficients"], serde_json::json!(["25", "-10", "1"]));
    assert_eq!(c[0]["unity_roots"], 2);
}

#[test]
fn lattice_summaries() {
    let o = picard(&["lattice", "concurrent-lines:5"], &[]);
    let v = json(&o);
    assert_eq!(v["det"], "256");
    assert_eq!(v["signature"], serde_json::json!([1, 4]));
    let o = picard(&["lattice", "a-chain:6", "--format", "table"], &[]);
    let t = String::from_utf8(o.stdout).unwrap();
    assert!(t.lines().any(|l| l.starts_with("rank") && l.ends_with('6')));
}

#[test]
fn output_is_deterministic() {
    let a = picard(&["delsarte", "quintic-rho13", "--profile"], &[]);
    let b = picard(&["delsarte", "quintic-rho13", "--profile"], &[]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["rho"], 13);
    assert_eq!(v["cover_degree"], 55);
}

#[test]
fn census_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.json");
    let o = picard(&["census", "--out", out.to_str().unwrap()], &[]);
    assert!(o.status.success());
    assert_eq!(json(&o)["match"], true);
    let records: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(records.len() as u64, json(&o)["records"].as_u64().unwrap());
}

#[test]
fn repro_listing_and_cheap_checks() {
    let o = picard(&["repro", "--list"], &[]);
    assert_eq!(json(&o).as_array().unwrap().len(), 13);
    let o = picard(&["repro", "h-set"], &[]);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["status"], "PASS");
    let o = picard(&["repro", "lifting-orders"], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn budget_skips_counting_checks_unless_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.jsonl");
    let o = picard(&["repro", "double-sextic", "--budget", "0s"], &[]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)[0]["status"], "SKIPPED");

    let env = [("PICARD_COUNT_CACHE", cache.as_path())];
    let o = picard(&["repro", "double-sextic"], &env);
    assert!(o.status.success());
    let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert_eq!(lines, 8);

    // the warm cache answers within a zero budget and is not rewritten
    let o = picard(&["repro", "double-sextic", "--budget", "0s"], &env);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["status"], "PASS");
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), lines);
}
