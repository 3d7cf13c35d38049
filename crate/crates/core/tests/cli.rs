use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sic"))
        .args(args)
        .env_remove("SIC_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = sic(&full);
    let v = serde_json::from_str(&stdout(&o))
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn group_order_extended() {
    let o = sic(&["group-order", "7", "--extended"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("32928"));
    let (_, v) = json(&["group-order", "6"]);
    assert_eq!(v["order"], 5184);
}

#[test]
fn enumerate_counts() {
    let (code, v) = json(&["enumerate", "4", "--extended", "--count-only"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1536);
    let o = sic(&["enumerate", "2"]);
    assert_eq!(stdout(&o).lines().count(), 24);
    assert_eq!(
        sic(&["enumerate", "7", "--extended", "--cap", "100"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn make_and_verify_d19() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("psi.json");
    let o = sic(&["make-fiducial", "d19", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let o = sic(&["verify", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    let (code, v) = json(&["verify", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["tolerance"].as_f64().unwrap(), 1e-8);
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("psi.json");
    sic(&["make-fiducial", "d7a", "--out", path_str(&file)]);
    let o = Command::new(env!("CARGO_BIN_EXE_sic"))
        .args(["verify", path_str(&file)])
        .env("SIC_TOL", "0")
        .output()
        .unwrap();
    // exact zero tolerance is stricter than double-precision rounding
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_sic"))
        .args(["verify", path_str(&file), "--tol", "1e-6"])
        .env("SIC_TOL", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("u.json");
    fs::write(
        &file,
        r#"{"d": 2, "re": [0.7071067811865476, 0.7071067811865476], "im": [0, 0]}"#,
    )
    .unwrap();
    let o = sic(&["verify", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn bad_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(&file, r#"{"d": 3, "re": [1, 0], "im": [0, 0]}"#).unwrap();
    let o = sic(&["verify", path_str(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
    fs::write(&file, r#"{"d": 2, "re": [0, 0], "im": [0, 0]}"#).unwrap();
    assert_eq!(sic(&["verify", path_str(&file)]).status.code(), Some(2));
    assert_eq!(
        sic(&["verify", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sic(&["make-fiducial", "d6", "--out", "/tmp/never.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(sic(&[]).status.code(), Some(2));
    assert_eq!(sic(&["trace", "5"]).status.code(), Some(2));
    let o = sic(&["order", "5", "--F", "1,2,3", "--chi", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--F"));
    assert_eq!(
        sic(&["order", "5", "--F", "1,1,0,2", "--chi", "0,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn stabilizer_and_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("psi.json");
    sic(&[
        "make-fiducial",
        "d3",
        "--t",
        "0.5235987755982988",
        "--out",
        path_str(&file),
    ]);
    let (code, v) = json(&["stabilizer", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 12);
    assert!(v["generator"].is_null());
    let (_, v) = json(&["orbit", path_str(&file)]);
    assert_eq!(
        (v["orbit_size"].as_u64(), v["sic_count"].as_u64()),
        (Some(36), Some(4))
    );

    sic(&["make-fiducial", "d7b", "--out", path_str(&file)]);
    let (_, v) = json(&["orbit", path_str(&file)]);
    assert_eq!(
        (v["orbit_size"].as_u64(), v["sic_count"].as_u64()),
        (Some(5488), Some(112))
    );

    sic(&["make-fiducial", "d19", "--out", path_str(&file)]);
    let o = sic(&["stabilizer", path_str(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--full-sweep"));
}

#[test]
fn d19_full_sweep_finds_order_18() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("psi.json");
    sic(&["make-fiducial", "d19", "--out", path_str(&file)]);
    let (code, v) = json(&["stabilizer", path_str(&file), "--full-sweep"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 18);
    assert!(!v["generator"].is_null());
}

#[test]
fn element_queries() {
    let (_, v) = json(&["eigenspaces", "12", "--F", "-4,11,1,3", "--chi", "4,-5"]);
    assert_eq!(v["dims"], serde_json::json!([3, 4, 5]));
    assert_eq!(v["tabulated"], serde_json::json!([3, 4, 5]));
    let o = sic(&["trace", "7", "--F", "0,-1,1,-1"]);
    assert_eq!(stdout(&o).trim(), "6");
    let (_, v) = json(&["order", "19", "--F", "-9,0,0,-2", "--chi", "0,0"]);
    assert_eq!(v["order"], 18);
    assert_eq!(v["unitary"], false);
}

#[test]
fn z_conjugator_rows() {
    for d in ["5", "6", "7", "12", "19", "24", "45"] {
        let (code, v) = json(&["zauner-check", d]);
        assert_eq!(code, 0, "d = {d}");
        assert_eq!(v["passed"], true);
    }
    assert_eq!(sic(&["zauner-check", "4"]).status.code(), Some(2));
}

#[test]
fn diag_order3_queries() {
    let o = sic(&["diag-order3", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "absent");
    let (code, v) = json(&["diag-order3", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["present"], true);
    assert_eq!(v["alpha"], 2);
}

#[test]
fn symmetry_scan_d2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("psi.json");
    sic(&["make-fiducial", "d2", "--out", path_str(&file)]);
    let (code, v) = json(&["conjectures", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(v["order3_stabilizer"], true);
    assert_eq!(v["z_conjugate"], true);
}

#[test]
fn search_writes_fiducial() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("found.json");
    let (code, v) = json(&[
        "search",
        "4",
        "--restarts",
        "4",
        "--seed",
        "3",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["converged"], true);
    let o = sic(&["verify", path_str(&file), "--tol", "1e-7"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, again) = json(&["search", "4", "--restarts", "4", "--seed", "3"]);
    assert_eq!(again["defect"], v["defect"]);
    assert_eq!(again["iterations"], v["iterations"]);
}
