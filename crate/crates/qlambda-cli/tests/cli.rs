use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CERT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../qlambda/data/unit_derivation_x2_3x_2.json");

fn qlambda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlambda")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn classify_reports_spv_quadratic() {
    let out = qlambda(&["classify", "--minpoly", "x^2+3x-1", "--root", "(-3.303,0)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], "qlambda.spv/1");
    assert_eq!(v["report"]["degree"], 2);
    assert_eq!(v["report"]["unit_interval_conjugate_count"], 1);
    assert_eq!(v["report"]["verdict"], "sPV-nontrivial");
    assert!(stderr(&out).starts_with("config {"));
}

#[test]
fn replay_verifies_shipped_certificate() {
    let out = qlambda(&["replay", "--in", CERT]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "target = 9 - 16*lambda, VERIFIED");
}

#[test]
fn replay_rejects_tampered_step() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(CERT).unwrap()).unwrap();
    let steps = v["steps"].as_array_mut().unwrap();
    let last = steps.len() - 1;
    steps[last]["coords"] = serde_json::json!([9, -15]);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = qlambda(&["replay", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn modelset_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = qlambda(&["modelset", "--minpoly", "x^2-3x+1", "--root", "2.6", "--radius", "6", "--csv", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("coords_0,coords_1,re,im"));
    // 0, 1, 1+phi, 2+2phi, -phi, -1-2phi and -1-3phi
    assert_eq!(lines.count(), 7);
    // only the two artifacts remain: no temporary files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = qlambda(&["classify", "--minpoly", "x^2+x-1", "--root", "-1.6", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qlambda(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_finds_small_target_and_reports_budget() {
    let out = qlambda(&["derive", "--minpoly", "x-3", "--root", "3", "--target", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["schema"], "qlambda.derivation/1");
    // the default depth of 16 is too shallow for lambda(lambda - 1) at lambda = 20
    let out = qlambda(&["derive", "--minpoly", "x-20", "--root", "20", "--target", "380"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not found within budget"));
    let out = qlambda(&["derive", "--minpoly", "x-20", "--root", "20", "--target", "380", "--max-depth", "128", "--max-abs", "1000000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn closure_rank_budget_exits_three() {
    let out = qlambda(&["closure", "--minpoly", "x^2-3x+1", "--root", "2.6", "--rank", "6", "--max-points", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let out = qlambda(&["closure", "--minpoly", "x^2-3x+1", "--root", "2.6", "--rank", "1"]);
    assert_eq!(json_of(&out)["count"], 4);
}

#[test]
fn polygon_svg_matches_point_count() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p5.svg");
    let out = qlambda(&["--threads", "1", "polygon", "--n", "5", "--param", "lambda_n", "--rank", "6", "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count() as u64, v["count"].as_u64().unwrap());
    assert_eq!(v["min_distance"]["squared"], "1");
    assert_eq!(v["symmetric"], true);
}

#[test]
fn qpoly_modes() {
    let out = qlambda(&["qpoly", "--member", "x^2-x+1"]);
    assert_eq!(json_of(&out)["verdict"]["member"], true);
    let out = qlambda(&["qpoly", "--level", "3"]);
    assert_eq!(json_of(&out)["count"], 64);
    let out = qlambda(&["qpoly", "--threshold", "1/2,1/4"]);
    assert_eq!(json_of(&out)["n"], 12);
}

#[test]
fn density_reports_seventeen_cover() {
    let out = qlambda(&["density", "--minpoly", "x^2+3x-2", "--root", "-3.56"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["cover"]["size"], 74);
    assert_eq!(v["cover"]["quadratic"]["k"], 7);
    assert_eq!(v["cover"]["quadratic"]["q_k"], "73");
}

#[test]
fn verify_suites_report_and_exit() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("qpoly.json");
    let out = qlambda(&["verify", "--suite", "qpoly", "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], "qlambda.verify/1");
    assert_eq!(v["suites"][0]["checks"][0]["status"], "pass");
    assert_eq!(v["suites"][0]["checks"][0]["criterion"], 8);
    assert!(v["unexercised"].as_array().unwrap().contains(&Value::from(11)));

    let out = qlambda(&["verify", "--suite", "conjecture-17-2", "--max-lambda", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    // the seventeen case carries the analysed max|x| discrepancy
    let out = qlambda(&["verify", "--suite", "density-cases"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["suites"][0]["checks"][0]["status"], "known-deviation");
}

#[test]
fn verify_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.json", "b.json"].iter().map(|n| dir.path().join(n)).collect();
    for p in &paths {
        qlambda(&["verify", "--suite", "paper-tables", "--out", p.to_str().unwrap()]);
    }
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&paths[0]), read(&paths[1]));
}
