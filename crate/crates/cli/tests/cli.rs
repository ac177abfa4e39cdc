use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eigencone::poly::cartan_p5;
use eigencone::Polynomial;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_eigencone"));
    c.env_remove("EIGENCONE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

#[test]
fn verify_symbolic_matches_the_golden_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sym.json");
    let o = run(&["verify-symbolic", "--output", path_arg(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(golden("verify_symbolic.json")).unwrap()
    );
    let v: Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    let by_name = |n: &str| {
        v["cubics"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == n)
            .unwrap()
            .clone()
    };
    assert_eq!(by_name("P5")["munzner_c"], 9);
    assert_eq!(by_name("P5")["weight"], -54);
    assert_eq!(by_name("P4")["munzner_c"], Value::Null);
    assert!(dir.path().join("sym.json.timing.json").exists());
}

#[test]
fn tampered_cartan_cubic_fails_with_a_residual() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("p5.txt");
    let text = cartan_p5().to_text();
    // x1^3 has coefficient 1; make it 2
    let tampered = text.replace("1/1 0/1 : 3 0 0 0 0", "2/1 0/1 : 3 0 0 0 0");
    assert_ne!(text, tampered);
    fs::write(&file, tampered).unwrap();
    let o = run(&["verify-symbolic", "--p5-from", path_arg(&file)]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("first term"), "{err}");
    assert_eq!(json_out(&o)["passed"], false);

    fs::write(&file, text).unwrap();
    assert_eq!(code(&run(&["verify-symbolic", "--p5-from", path_arg(&file)])), 0);
}

#[test]
fn unreadable_or_malformed_cubic_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(
        code(&run(&["verify-symbolic", "--p5-from", path_arg(&missing)])),
        2
    );
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "nvars 5\n1/1 0/1 : 3 0\n").unwrap();
    assert_eq!(code(&run(&["verify-symbolic", "--p5-from", path_arg(&bad)])), 2);
}

#[test]
fn dump_round_trips() {
    let o = run(&["dump", "--poly", "p5"]);
    assert_eq!(code(&o), 0);
    let p: Polynomial = String::from_utf8(o.stdout).unwrap().parse().unwrap();
    assert_eq!(p, cartan_p5());
}

#[test]
fn spectrum_at_the_focal_point() {
    let o = run(&["spectrum", "--point", "1,0,0,0,0", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("p,lambda1,"));
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(&row[..6], &[1.0, 2.0, 2.0, 2.0, -7.0, -7.0]);
}

#[test]
fn spectrum_grid_passes_and_off_sphere_point_is_rejected() {
    let o = run(&["spectrum", "--grid", "1001", "--tol", "1e-9"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1001);
    assert!(v["max_abs_diff"].as_f64().unwrap() <= 1e-9);
    assert_eq!(code(&run(&["spectrum", "--point", "1,1,0,0,0"])), 2);
    assert_eq!(code(&run(&["spectrum", "--point", "1,0,0"])), 2);
    assert_eq!(code(&run(&["spectrum", "--grid", "1"])), 2);
}

#[test]
fn impossible_tolerance_is_a_verification_failure() {
    let o = run(&["spectrum", "--grid", "11", "--tol", "1e-30"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn certify_reports_are_byte_identical_across_runs_and_threads() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for (k, threads) in ["1", "1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("c{k}.json"));
        let o = run(&[
            "certify",
            "--field",
            "w5",
            "--samples",
            "10",
            "--seed",
            "1",
            "--threads",
            threads,
            "--output",
            path_arg(&out),
        ]);
        assert_eq!(code(&o), 0);
        files.push(fs::read(&out).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
    let v: Value = serde_json::from_slice(&files[0]).unwrap();
    assert_eq!(v["seed"], 1);
    assert_eq!(v["samples"], 10);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(v["tolerances"]["exclusion"].is_number());
    assert!(v.get("wall_clock_seconds").is_none());
}

#[test]
fn seed_defaults_to_the_environment() {
    let o = bin()
        .args(["certify", "--samples", "5"])
        .env("EIGENCONE_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["seed"], 1234);
}

#[test]
fn certify_csv_has_one_row_per_sample() {
    let o = run(&["certify", "--samples", "25", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 26);
    assert_eq!(
        text.lines().next().unwrap(),
        "index,p,pbar,lambda_max,lambda_min,ratio"
    );
}

#[test]
fn narrow_band_makes_certification_fail() {
    let o = run(&["certify", "--samples", "200", "--band", "0.9", "1.1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_out(&o)["passed"], false);
}

#[test]
fn certify_with_search_and_other_fields() {
    let o = run(&["certify", "--samples", "50", "--restarts", "2"]);
    assert_eq!(code(&o), 0);
    assert!(json_out(&o)["search"]["evaluations"].as_u64().unwrap() > 0);
    let o = run(&[
        "certify",
        "--field",
        "w5_delta",
        "--delta",
        "1.5",
        "--samples",
        "50",
        "--band",
        "0.001",
        "1000",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&run(&["certify", "--field", "w5_delta", "--samples", "5"])),
        2
    );
    let o = run(&[
        "certify",
        "--field",
        "u10",
        "--samples",
        "20",
        "--band",
        "0.001",
        "1000",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn lawson_witness_is_found() {
    let o = run(&["witness-lawson", "--restarts", "5", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["found"], true);
    assert!(v["witness"].is_object());
}

#[test]
fn scan_delta_writes_one_csv_row_per_exponent() {
    let o = run(&[
        "scan-delta",
        "--deltas",
        "1,1.5,2",
        "--samples",
        "100",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(code(&run(&["scan-delta", "--deltas", "0.5"])), 2);
}

#[test]
fn u10_reports_homogeneity() {
    let o = run(&["u10", "--samples", "50"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["all_hyperbolic"], true);
    assert!(v["homogeneity_max_rel_error"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn eval_at_the_focal_point() {
    let o = run(&["eval", "--point", "1,0,0,0,0"]);
    assert_eq!(code(&o), 0);
    let v = json_out(&o);
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["level"], 1.0);
    let diag: Vec<f64> = (0..5).map(|i| v["hessian"][i][i].as_f64().unwrap()).collect();
    assert!(diag
        .iter()
        .zip([2.0, -7.0, 2.0, 2.0, -7.0])
        .all(|(a, b)| (a - b).abs() < 1e-12));
    assert_eq!(code(&run(&["eval", "--point", "0,0,0,0,0"])), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["certify", "--bogus"][..],
        &["certify", "--samples", "0"],
        &["certify", "--band", "5", "1"],
        &["certify", "--field", "nope"],
        &["verify-symbolic", "--format", "csv"],
        &[],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}
