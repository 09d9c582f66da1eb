use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qboson-alcove"));
    c.env_remove("QBOSON_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qboson-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn spectrum_lists_every_label() {
    let out = run(&["spectrum", "--lattice", "n=2", "m=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["count"], 10);
    let points = v["results"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 10);
    for p in points {
        assert_eq!(p["lambda"].as_array().unwrap().len(), 2);
        assert!(p["bae_residual"].as_f64().unwrap() <= 1e-10);
        assert_eq!(p["in_chamber"], true);
    }
    for key in ["command", "params", "results", "residuals", "tolerances", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn residuals_respect_tolerances_on_success() {
    let out = run(&["gram", "--lattice", "n=2", "m=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"]["matrix"].as_array().unwrap().len(), 10);
    for (k, r) in v["residuals"].as_object().unwrap() {
        assert!(r.as_f64().unwrap() <= v["tolerances"][k].as_f64().unwrap(), "{k}");
    }
    assert!(v["residuals"]["max_correlation"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = run(&["spectrum", "n=1", "m=2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("\"energy\"")).unwrap();
    let value = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let mantissa = value.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
    assert_eq!(mantissa.len(), 17, "{value}");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["gram", "--continuum", "n=2", "m=2"]);
    let b = run(&["gram", "--continuum", "n=2", "m=2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_all_passes_on_defaults() {
    let out = run(&["verify", "--check", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let checks = v["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        &["spectrum", "q=1.5"][..],
        &["spectrum", "n=2", "m=3", "--lambda", "4,0"],
        &["spectrum", "bogus=1"],
        &["spectrum", "n=2.5"],
        &["spectrum", "--continuum", "q=0.5"],
        &["verify", "--check", "nope"],
        &["converge", "--lattice"],
        &["wavefn", "--lambda", "1,0", "--lambda", "0,0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn tolerance_failure_exits_three() {
    let out = run(&["gram", "n=2", "m=2", "--orthogonality-tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn converge_reports_each_size() {
    let out = run(&["converge", "--continuum", "n=1", "--lambda", "0", "--m-list", "8,16,32,64"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["results"]["sweeps"][0]["rows"].as_array().unwrap();
    let devs: Vec<f64> = rows.iter().map(|r| r["xi_deviation"].as_f64().unwrap()).collect();
    assert_eq!(devs.len(), 4);
    assert!(devs.windows(2).all(|w| w[0] >= 1.5 * w[1]));
}

#[test]
fn csv_tables_land_in_out_dir() {
    let dir = scratch("csv");
    let out = bin()
        .env("QBOSON_OUT_DIR", &dir)
        .args(["wavefn", "n=2", "m=3", "--lambda", "2,1", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.join("wavefn.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mu,re,im"));
    assert_eq!(lines.count(), 10);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn explicit_output_path_wins() {
    let dir = scratch("json");
    let path = dir.join("nested").join("s.json");
    let out = bin()
        .env("QBOSON_OUT_DIR", dir.join("ignored"))
        .args(["spectrum", "n=1", "m=1", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["count"], 2);
    assert!(!dir.join("ignored").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn continuum_wave_meets_boundary_conditions() {
    let out = run(&["wavefn", "--continuum", "n=2", "g=0.7", "--lambda", "2,1", "--resolution", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["values"].as_array().unwrap().len(), 10);
    assert!(v["residuals"]["robin_affine"].as_f64().unwrap() <= 1e-8);
}
