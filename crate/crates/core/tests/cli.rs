use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn frl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn lambda_table_csv_is_lossless_and_deterministic() {
    let a = frl(&["lambda-table", "--dmin", "2", "--dmax", "9", "--format", "csv"]);
    let b = frl(&["lambda-table", "--dmin", "2", "--dmax", "9", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    for (i, row) in rows.iter().enumerate() {
        let d: u32 = row[0].parse().unwrap();
        assert_eq!(d, i as u32 + 2);
        let lam: f64 = row[1].parse().unwrap();
        assert_eq!(lam, frl_core::higherdim::lambda_d(d).unwrap());
    }
}

#[test]
fn json_embeds_version_and_config() {
    let v = json(&frl(&["lambda-table", "--dmax", "4", "--format", "json"]));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["command"], "lambda-table");
    assert_eq!(v["config"]["dmax"], 4);
    assert_eq!(v["result"].as_array().unwrap().len(), 3);

    let c = json(&frl(&["candidate"]));
    assert!((c["result"]["largest_root"].as_f64().unwrap() - 0.59354).abs() < 1e-4);
    assert!((c["result"]["near_double_root"].as_f64().unwrap() - 0.8990).abs() < 1e-3);
}

#[test]
fn output_file_and_coefficient_file() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = dir.path().join("c.json");
    std::fs::write(&coeffs, r#"{"coeffs": ["-12", "1"]}"#).unwrap();
    let out = dir.path().join("out.json");
    let o = frl(&["candidate", "--coeffs", coeffs.to_str().unwrap(), "--normalize", "--report", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let want = (3.0 / (2.0 * std::f64::consts::PI)).sqrt();
    assert!((v["result"]["largest_root"].as_f64().unwrap() - want).abs() < 1e-10);
    assert!(v["result"]["certificate"]["roots"].is_array());

    std::fs::write(&coeffs, r#"{"coeffs": ["1"]}"#).unwrap();
    assert_eq!(frl(&["candidate", "--coeffs", coeffs.to_str().unwrap(), "--normalize"]).status.code(), Some(2));
    assert_eq!(frl(&["candidate", "--coeffs", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn optimize_with_config_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "search": {"min_step": 1e-4, "seed": 3}}"#).unwrap();
    let log: &Path = &dir.path().join("log.jsonl");
    let run = || {
        frl(&["optimize", "--config", cfg.to_str().unwrap(), "--log", log.to_str().unwrap()])
    };
    let a = run();
    let first_log = std::fs::read(log).unwrap();
    let b = run();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first_log, std::fs::read(log).unwrap());
    let v = json(&a);
    assert_eq!(v["config"]["search"]["seed"], 3);
    assert_eq!(v["config"]["search"]["min_step"], 1e-4);
    assert!(v["result"]["objective"].as_f64().unwrap() <= v["result"]["start_objective"].as_f64().unwrap());
    let lines = String::from_utf8(first_log).unwrap();
    assert!(lines.lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));

    std::fs::write(&cfg, r#"{"schema_version": 1, "serach": {}}"#).unwrap();
    assert_eq!(run().status.code(), Some(2));
    std::fs::write(&cfg, r#"{"schema_version": 1, "search": {"shrink": 2.0}}"#).unwrap();
    assert_eq!(run().status.code(), Some(2));
}

#[test]
fn lower_bound_single_point() {
    let v = json(&frl(&["lower-bound", "--A", "0.4", "--tau", "0.026"]));
    assert_eq!(v["result"]["status"], "fails");
    assert!(v["result"]["margin"].as_f64().unwrap() < 0.0);
    assert_eq!(frl(&["lower-bound", "--A", "0.4", "--tau", "0.3"]).status.code(), Some(2));
}

#[test]
fn sign_search_output() {
    let v = json(&frl(&["sign-search", "--family", "hermite", "--points", "1,2,3,4", "--pattern", "+,+,-,+", "--nmin", "1", "--nmax", "2000"]));
    assert!(v["result"]["matches"].as_array().unwrap().is_empty());
    assert!(v["result"]["frequencies"].is_array());
    let w = json(&frl(&["sign-search", "--family", "laguerre", "--nu", "2", "--points", "1,2,3", "--nmax", "500"]));
    assert_eq!(w["result"]["pattern"], "-,-,-");
    assert_eq!(frl(&["sign-search", "--family", "hermite", "--points", "1,2"]).status.code(), Some(2));
}

#[test]
fn ft_check_reports_small_differences() {
    let v = json(&frl(&["ft-check"]));
    assert!(v["result"]["max_difference"].as_f64().unwrap() < 1e-8);
    let csv = stdout(&frl(&["ft-check", "--format", "csv", "--points", "0.5"]));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn plot_data_rows() {
    let text = stdout(&frl(&["plot-data"]));
    let mut sections = text.split("\n\n");
    let samples = sections.next().unwrap();
    assert_eq!(samples.lines().count(), 502);
    let roots: Vec<f64> = sections.next().unwrap().lines().skip(1).map(|l| l.parse().unwrap()).collect();
    assert!(roots.iter().any(|r| (r - 0.59354).abs() < 1e-4));

    let psi = stdout(&frl(&["plot-data", "--function", "psi", "--n", "0", "--from", "-1", "--to", "1", "--step", "0.5"]));
    let mid: Vec<&str> = psi.lines().nth(3).unwrap().split(',').collect();
    assert_eq!(mid[0].parse::<f64>().unwrap(), 0.0);
    assert!((mid[1].parse::<f64>().unwrap() - 2f64.powf(0.25)).abs() < 1e-15);
    assert_eq!(frl(&["plot-data", "--step", "0"]).status.code(), Some(2));
}

#[test]
fn verify_all_exit_codes() {
    let ok = frl(&["verify-all", "--criterion", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("criterion 1 [PASS]"));
    let failing = frl(&["verify-all", "--criterion", "4"]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(stdout(&failing).contains("[FAIL]"));
    assert_eq!(frl(&["verify-all", "--criterion", "10"]).status.code(), Some(2));
    let j = frl(&["verify-all", "--criterion", "3", "--format", "json"]);
    let k = frl(&["verify-all", "--criterion", "3", "--format", "json"]);
    assert_eq!(j.stdout, k.stdout);
}

#[test]
fn usage_errors_and_threads() {
    assert_eq!(frl(&["--help"]).status.code(), Some(0));
    assert_eq!(frl(&[]).status.code(), Some(2));
    assert_eq!(frl(&["lambda-table", "--dmax", "500"]).status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_frl")).env("FRL_THREADS", "zero").args(["lambda-table"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let two = Command::new(env!("CARGO_BIN_EXE_frl")).env("FRL_THREADS", "2").args(["lambda-table"]).output().unwrap();
    assert_eq!(two.stdout, frl(&["lambda-table"]).stdout);
}
