//! End-to-end runs of the `so5` binary.

use std::process::{Command, Output};

use serde_json::Value;

const LAMBDAS: &str = "5,4,3,2,1";

fn so5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_so5"))
        .args(args)
        .env_remove("SO5_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.stdout.ends_with(b"\n"), "JSON is newline-terminated");
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn missing_lambdas_is_a_config_error() {
    let out = so5(&["equilibria", "--c1", "2.5", "--c2", "4.25"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--lambdas"), "{}", stderr(&out));
}

#[test]
fn non_regular_orbit_is_refused() {
    let out = so5(&[
        "equilibria",
        "--lambdas",
        LAMBDAS,
        "--c1",
        "2.5",
        "--c2",
        "3.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("2c2 > c1^2 > c2"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn catalog_lists_all_weyl_points() {
    let out = so5(&[
        "equilibria",
        "--lambdas",
        LAMBDAS,
        "--c1",
        "2.5",
        "--c2",
        "4.25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 120);
    assert!(num(&v["max_residual"]) <= 1e-12);
    assert!(num(&v["max_casimir_error"]) <= 1e-12);
    assert_eq!(v["catalog"]["points"].as_array().unwrap().len(), 120);
    assert_eq!(v["catalog"]["continuous"].as_array().unwrap().len(), 10);
    assert!((num(&v["catalog"]["a"]) - 2.0).abs() < 1e-15);
}

#[test]
fn family_filter() {
    let out = so5(&[
        "equilibria",
        "--lambdas",
        LAMBDAS,
        "--c1",
        "2.5",
        "--c2",
        "4.25",
        "--families",
        "t1,t8,t12",
    ]);
    let v = json(&out);
    assert_eq!(v["count"], 24);
    let fams: Vec<&str> = v["catalog"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["family"].as_str().unwrap())
        .collect();
    assert!(fams[..8].iter().all(|&f| f == "t1"));
    assert_eq!((fams[8], fams[16]), ("t8", "t12"));
    let bad = so5(&[
        "equilibria",
        "--lambdas",
        LAMBDAS,
        "--c1",
        "2.5",
        "--c2",
        "4.25",
        "--families",
        "t16",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn equilibrium_start_gives_a_constant_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let out = so5(&[
        "simulate",
        "--lambdas",
        LAMBDAS,
        "--init",
        "family:t1:slot=a,b",
        "--c1",
        "2.5",
        "--c2",
        "4.25",
        "--dt",
        "1e-3",
        "--steps",
        "10000",
        "--stride",
        "100",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert!(num(&v["max_deviation"]) <= 1e-12);
    assert!(num(&v["max_drift"]) <= 1e-14);
    assert_eq!(v["passed"], true);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,x3,y1,y2,y3,z1,z2,z3,z4"));
    assert_eq!(lines.clone().count(), 101);
    assert_eq!(lines.next().unwrap().split(',').count(), 11);
}

#[test]
fn family_start_needs_the_orbit() {
    let out = so5(&[
        "simulate",
        "--lambdas",
        LAMBDAS,
        "--init",
        "family:t1:slot=a,b",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--c1"));
}

#[test]
fn coordinate_start_conserves_integrals() {
    let out = so5(&[
        "simulate",
        "--lambdas",
        LAMBDAS,
        "--init",
        "coords:0.3,-0.2,0.1,0.25,-0.15,0.05,0.4,-0.35,0.2,-0.1",
        "--steps",
        "5000",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let drifts = v["conservation"]["drifts"].as_array().unwrap();
    assert_eq!(drifts.len(), 11);
    assert!(drifts.iter().all(|d| num(&d["max_drift"]) <= 1e-6));
}

#[test]
fn excessive_drift_exits_one() {
    let out = so5(&[
        "simulate",
        "--lambdas",
        LAMBDAS,
        "--init",
        "random:3",
        "--dt",
        "0.5",
        "--steps",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn classify_report_shape() {
    let out = so5(&[
        "classify",
        "--lambdas",
        LAMBDAS,
        "--c1",
        "2.5",
        "--c2",
        "4.25",
        "--families",
        "t1,t2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["special_condition"]["t6"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let slot = &rows[0]["slots"][0];
    for key in ["family", "slot", "status", "evidence", "spectrum", "arnold"] {
        assert!(slot.get(key).is_some(), "missing {key}");
    }
    assert_eq!(slot["arnold"]["combo"], "F1+F5");
    assert!((num(&slot["arnold"]["m"]) - 2.0 / 27.0).abs() <= 1e-14);
    // t2 (b,a) has no energy-Casimir certificate and no growing mode
    let t2ba = &rows[3];
    assert_eq!(t2ba["class"], "b,a");
    assert_eq!(t2ba["status"], "open");
    assert_eq!(t2ba["slots"][0]["evidence"]["kind"], "open_case");
    assert!(v.get("mismatches").is_none());
}

#[test]
fn classify_expectation_diff_on_the_agreeing_families() {
    let out = so5(&[
        "classify",
        "--lambdas",
        LAMBDAS,
        "--c1",
        "2.5",
        "--c2",
        "4.25",
        "--families",
        "t1,t3,t6,t8,t12",
        "--expect",
        "paper",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["mismatches"], Value::Array(vec![]));
}

#[test]
fn classify_needs_ordered_inertia() {
    let out = so5(&[
        "classify",
        "--lambdas",
        "1,2,3,4,5",
        "--c1",
        "2.5",
        "--c2",
        "4.25",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("strictly decreasing"));
}

#[test]
fn verify_single_suite() {
    let out = so5(&[
        "verify",
        "--suite",
        "generator-identity",
        "--n",
        "7",
        "--samples",
        "500",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    assert_eq!(v["suites"][0]["checks"], 7 * 500);
    assert_eq!(so5(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn seeded_output_is_byte_identical() {
    let a = so5(&["verify", "--seed", "11", "--samples", "10"]);
    let b = so5(&["verify", "--seed", "11", "--samples", "10"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_so5"))
        .args(["verify", "--samples", "10"])
        .env("SO5_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    let other = so5(&["verify", "--seed", "12", "--samples", "10"]);
    assert_ne!(other.stdout, a.stdout);
}

#[test]
fn integrals_snapshot_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("snap.json");
    let out = so5(&[
        "integrals",
        "--lambdas",
        LAMBDAS,
        "--init",
        "family:t1:a,b",
        "--c1",
        "2.5",
        "--c2",
        "4.25",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((num(&v["C1"]) - 2.5).abs() < 1e-14);
    assert!((num(&v["C2"]) - 4.25).abs() < 1e-14);
    assert_eq!(v["F"].as_array().unwrap().len(), 5);
    let sum: f64 = v["F"].as_array().unwrap().iter().map(num).sum();
    assert!(sum.abs() < 1e-14);
}
