use std::path::PathBuf;
use std::process::{Command, Output};

use gfermat::io::{from_json, Report};
use gfermat::OrbitTypeSolution;

const HIDALGO: &str = r#"{"k": 2, "lambdas": ["-6", "-2+1.4142135623730951i", "2-1.4142135623730951i"]}"#;

fn gfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfc"))
        .args(args)
        .env_remove("GFC_EPSILON")
        .output()
        .expect("gfc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn curve_file(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn genus_of_type_2_5() {
    let o = gfc(&["genus", "--k", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "17");
}

#[test]
fn orbit_types_for_n_4() {
    let o = gfc(&["orbit-types", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["1 0 5 0", "1 1 3 0", "1 2 1 0", "3 0 1 1", "5 0 1 0"]);

    let o = gfc(&["orbit-types", "--n", "4", "--output", "json"]);
    let parsed: Vec<OrbitTypeSolution> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.len(), 5);
    assert_eq!(parsed[3], OrbitTypeSolution::new(3, 0, 1, 1));
}

#[test]
fn classify_hidalgo_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = curve_file(&dir, "hidalgo.json", HIDALGO);
    let o = gfc(&["classify", "--curve", path.to_str().unwrap(), "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Report = from_json(&stdout(&o)).unwrap();
    assert_eq!(report.verdict.as_str(), "moduli_R_not_real");
    assert_eq!(report.witness_order, Some(4));
    assert_eq!(report.exhaustion.lifts_scanned, 32 * report.exhaustion.antisymmetries as u64);

    // The emitted witness is itself a valid automorphism document.
    report.witness.unwrap().automorphism().unwrap();
}

#[test]
fn text_and_json_agree_and_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let curves = [
        ("hidalgo.json", HIDALGO),
        ("real.json", r#"{"k": 2, "lambdas": ["-2", "3.5"]}"#),
        ("generic.json", r#"{"k": 2, "lambdas": ["0.37+1.21i", "-1.4+0.55i"]}"#),
        ("odd_k.json", r#"{"k": 3, "lambdas": ["-6", "-2+1.4142135623730951i", "2-1.4142135623730951i"]}"#),
    ];
    for (name, body) in curves {
        let path = curve_file(&dir, name, body);
        let p = path.to_str().unwrap();
        let json1 = gfc(&["classify", "--curve", p, "--output", "json", "--seed", "11"]);
        let json2 = gfc(&["classify", "--curve", p, "--output", "json", "--seed", "11"]);
        assert_eq!(json1.stdout, json2.stdout, "{name}");
        let report: Report = from_json(&stdout(&json1)).unwrap();
        let reserialized = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(reserialized.trim(), stdout(&json1).trim(), "{name}");

        let text = stdout(&gfc(&["classify", "--curve", p]));
        let verdict_line = text.lines().next().unwrap();
        assert_eq!(verdict_line, format!("verdict: {}", report.verdict.as_str()), "{name}");
    }
}

#[test]
fn symmetries_accepts_negative_points() {
    let o = gfc(&[
        "symmetries",
        "--points",
        "inf,0,1,-6,-2+1.4142135623730951i,2-1.4142135623730951i",
        "--orientation",
        "anticonformal",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let syms = v.as_array().unwrap();
    assert_eq!(syms.len(), 1);
    assert_eq!(syms[0]["cycles"], "(1 2)(3 4)(5 6)");
    assert_eq!(syms[0]["profile"]["n"], 2);
}

#[test]
fn lift_lists_every_variant() {
    let dir = tempfile::tempdir().unwrap();
    let path = curve_file(&dir, "hidalgo.json", HIDALGO);
    let o = gfc(&[
        "lift",
        "--curve",
        path.to_str().unwrap(),
        "--perm",
        "(1 2)(3 4)(5 6)",
        "--anticonformal",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lifts = v["lifts"].as_array().unwrap();
    assert_eq!(lifts.len(), 32);
    let first: gfermat::io::AutomorphismJson = serde_json::from_value(lifts[0].clone()).unwrap();
    assert_eq!(first.perm, vec![2, 1, 4, 3, 6, 5]);
    assert!(first.anticonformal);
}

#[test]
fn verify_suites_pass() {
    for suite in ["theorem1", "humbert", "hidalgo", "p5"] {
        let o = gfc(&["verify", "--suite", suite, "--output", "json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["holds"], true);
    }
    let o = gfc(&["verify", "--suite", "theorem1", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds (moduli_R_and_real)"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let hidalgo = curve_file(&dir, "hidalgo.json", HIDALGO);
    let h = hidalgo.to_str().unwrap();
    let bad = curve_file(&dir, "bad.json", r#"{"k": 2, "lambdas": ["-6 + i"]}"#);

    assert_eq!(gfc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gfc(&["genus", "--k", "2", "--n", "5", "--epsilon", "0.1"]).status.code(), Some(2));
    assert_eq!(gfc(&["classify", "--curve", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(gfc(&["classify", "--curve", "/nonexistent/curve.json"]).status.code(), Some(2));
    assert_eq!(gfc(&["lift", "--curve", h, "--perm", "(1 3)"]).status.code(), Some(2));
    assert_eq!(gfc(&["classify", "--curve", h, "--lift-cap", "4"]).status.code(), Some(3));
    assert_eq!(gfc(&["genus", "--k", "2", "--n", "2"]).status.code(), Some(0));
}

#[test]
fn epsilon_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = curve_file(&dir, "hidalgo.json", HIDALGO);
    let o = Command::new(env!("CARGO_BIN_EXE_gfc"))
        .args(["classify", "--curve", path.to_str().unwrap(), "--output", "json"])
        .env("GFC_EPSILON", "1e-7")
        .output()
        .unwrap();
    let report: Report = from_json(&stdout(&o)).unwrap();
    assert_eq!(report.epsilon, 1e-7);

    let o = Command::new(env!("CARGO_BIN_EXE_gfc"))
        .args(["genus", "--k", "2", "--n", "5"])
        .env("GFC_EPSILON", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
