use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tamagawa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamagawa"))
        .args(args)
        .env_remove("TAMAGAWA_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn rows(v: &Value) -> &Vec<Value> {
    v["reports"].as_array().unwrap()
}

#[test]
fn euler_gaussian_has_24_passing_rows() {
    let out = tamagawa(&["verify", "euler", "--torus", "norm1:-1", "--pmax", "97"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(rows(&v).len(), 24);
    for r in rows(&v) {
        assert_eq!(r["verdict"], "PASS");
        for key in ["p", "euler_factor", "point_count", "density"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
    }
    let first = &rows(&v)[0];
    assert_eq!((first["p"].as_u64(), first["euler_factor"].as_str()), (Some(3), Some("4/3")));
}

#[test]
fn gaussian_tnc_passes_with_tau_two() {
    let out = tamagawa(&["verify", "tnc", "--torus", "norm1:-1", "--tol", "1e-6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &rows(&v)[0];
    assert_eq!(r["identity"], "tnc");
    let tau = &r["tau_tam"];
    assert!((tau["value"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert!(tau["abs_err"].as_f64().is_some());
    assert_eq!(r["ono_rhs"], "2/1");
}

#[test]
fn positive_rank_is_rejected() {
    let out = tamagawa(&["verify", "tnc", "--torus", "res:-1"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Assumption violated: Q-rank 1"));
    assert!(out.stdout.is_empty());
    let out = tamagawa(&["verify", "globalinv", "--torus", "res:5"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn config_errors_exit_64() {
    for args in [
        &["verify", "euler", "--tol", "0"][..],
        &["verify", "euler", "--pmax", "2"],
        &["verify", "euler", "--budget", "100"],
        &["verify", "euler", "--torus", "norm1:4"],
        &["verify", "euler", "--torus", "cubic:5"],
        &["verify", "frobnicate"],
    ] {
        assert_eq!(tamagawa(args).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn inconclusive_density_keeps_its_trace() {
    // too little budget to see the value at 23 settle
    let out = tamagawa(&["verify", "density", "--torus", "norm1:-23", "--pmax", "3", "--budget", "10000"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let bad = rows(&v).iter().find(|r| r["p"] == 23).unwrap();
    assert_eq!(bad["verdict"], "INCONCLUSIVE");
    assert!(bad["cause"].is_string());
    assert!(!bad["trace"].as_array().unwrap().is_empty());
}

#[test]
fn worst_verdict_decides_exit_code() {
    let out = tamagawa(&["verify", "all", "--torus", "norm1:-1", "--torus", "quot:-1,3"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert!(rows(&v).iter().all(|r| r["verdict"] != "FAIL"));
    assert!(rows(&v).iter().any(|r| r["verdict"] == "INCONCLUSIVE"));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for jobs in ["1", "3"] {
        let path = dir.path().join(format!("r{jobs}.json"));
        let p = path.to_str().unwrap();
        let out = tamagawa(&["verify", "all", "--torus", "norm1:-7", "--torus", "quot:5", "--jobs", jobs, "--out", p]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        docs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
    // nothing left behind by the atomic write
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2);
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "torus = ['norm1:-3']\npmax = 50\ntol = 1e-4\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&tamagawa(&["verify", "euler", "--config", c, "--pmax", "20"]));
    assert_eq!(v["config_echo"]["pmax"], 20);
    assert_eq!(v["config_echo"]["tol"], 1e-4);
    assert_eq!(v["config_echo"]["torus"][0], "norm1:-3");
    assert_eq!(rows(&v).len(), 6);

    std::fs::write(&cfg, "torus = 'norm1:-3'\npmax = 'lots'\n").unwrap();
    let out = tamagawa(&["verify", "euler", "--config", c]);
    assert_eq!(out.status.code(), Some(64));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("pmax") && msg.contains("line 2"), "{msg}");
}

#[test]
fn budget_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tamagawa"))
        .args(["verify", "euler", "--pmax", "5"])
        .env("TAMAGAWA_BUDGET", "123456")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config_echo"]["budget"], 123456);
}

#[test]
fn missing_out_dir_is_reported() {
    let out = tamagawa(&["verify", "euler", "--pmax", "5", "--out", "/nonexistent/dir/r.json"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(!Path::new("/nonexistent/dir/r.json").exists());
}
