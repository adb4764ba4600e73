//! End-to-end tests of the goldbach-lab binary: subcommands, report
//! formats, exit codes, cache behavior, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_goldbach-lab")
}

fn zeros_file() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn goldbach-lab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn zfr_constant_family_example() {
    let out = run(&["zfr", "--family", "constant:0.5", "--x", "54.598", "--no-timestamp"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("experiment,N,truth,formula,residual,envelope,constant,pass"));
    // omega value is eta * log x = 2.0 at x = e^4
    let omega_line = text.lines().find(|l| l.starts_with("omega[")).unwrap();
    let value: f64 = omega_line.split(',').nth(3).unwrap().parse().unwrap();
    assert!((value - 2.0).abs() < 1e-5, "omega = {value}");
}

#[test]
fn reports_are_deterministic_without_timestamp() {
    let args = ["verify-parseval", "--grid", "16,100", "--no-timestamp"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // with the timestamp the header line differs but data rows agree
    let c = run(&["verify-parseval", "--grid", "16,100"]);
    let c_text = stdout(&c);
    let without_header: Vec<&str> = c_text
        .lines()
        .filter(|l| !l.starts_with("# generated-at"))
        .map(|l| l.trim_end())
        .collect();
    let a_text = stdout(&a);
    let plain: Vec<&str> = a_text.lines().map(|l| l.trim_end()).collect();
    assert_eq!(without_header.join("\n"), plain.join("\n"));
}

#[test]
fn json_format_parses() {
    let out = run(&["verify-contour", "--grid", "10,50", "--format", "json", "--no-timestamp"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.len() >= 4);
    assert!(rows.iter().all(|r| r["pass"].as_bool().unwrap()));
    assert!(v["generated_at"].is_null() || v.get("generated_at").is_none());
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&[
        "verify-parseval",
        "--grid",
        "16",
        "--no-timestamp",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("parseval[N=16"));
}

#[test]
fn exit_codes() {
    // config error: bad family
    let out = run(&["zfr", "--family", "constant:0.9", "--x", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // config error: malformed grid
    let out = run(&["verify-contour", "--grid", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // data error: missing zeros file
    let out = run(&["verify-fujii", "--zeros", "/definitely/not/here.txt", "--grid", "1e3"]);
    assert_eq!(out.status.code(), Some(3));
    // clap-level parse error
    let out = run(&["verify-fujii", "--grid", "1e3"]);
    assert_eq!(out.status.code(), Some(2));
    // assertion failure: impossible tolerance, report still written
    let out = run(&[
        "verify-parseval",
        "--grid",
        "16",
        "--tolerance",
        "parseval=1e-30",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("false"));
}

#[test]
fn fujii_small_run_with_zeros() {
    let zeros = zeros_file();
    let out = run(&[
        "verify-fujii",
        "--grid",
        "1e3,1e4",
        "--zeros",
        zeros.to_str().unwrap(),
        "--max-gamma",
        "5000",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // truncation height is the last ordinate below the requested cap
    assert!(text.contains("fujii[N=1000,T=499"), "{text}");
    assert!(text.contains("fujii-decade-ratio"));
}

#[test]
fn sieve_writes_cache_and_suites_reuse_it() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("lambda.glmb");
    let out = run(&["sieve", "--n-max", "50000", "--cache", cache.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(&cache).unwrap();
    assert_eq!(&bytes[..4], b"GLMB");
    assert_eq!(bytes.len(), 14 + 8 * 50_000);

    // a smaller request is served from the same cache (prefix-consistent)
    let out = run(&[
        "verify-identities",
        "--n-max",
        "2000",
        "--cache",
        cache.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert!(out.status.success());

    // env-var cache directory
    let envdir = dir.path().join("envcache");
    let out = Command::new(bin())
        .env("GOLDBACH_LAB_CACHE", &envdir)
        .args(["sieve", "--n-max", "1000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(envdir.join("lambda.glmb").exists());
}

#[test]
fn smooth_run_small() {
    let zeros = zeros_file();
    let out = run(&[
        "verify-smooth",
        "--grid",
        "100,1000",
        "--zeros",
        zeros.to_str().unwrap(),
        "--max-zeros",
        "50",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("smooth-psi[N=100"));
    assert!(text.contains("smooth-F-growth"));
}

#[test]
fn psi_explicit_run_small() {
    let zeros = zeros_file();
    let out = run(&[
        "verify-psi-explicit",
        "--grid",
        "1000",
        "--zeros",
        zeros.to_str().unwrap(),
        "--max-gamma",
        "1500",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("psi-explicit[x=1000,T=100"));
    assert!(text.contains("psi-explicit-fitted-C"));
}

#[test]
fn zfr_logpower_table_and_grid() {
    let out = run(&[
        "zfr",
        "--family",
        "logpower:1,1,0",
        "--grid",
        "1e4,1e8",
        "--no-timestamp",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("omega[x=1e4"));
    assert!(text.contains("critical-point[x=1e8"));
    assert!(text.contains("logx-minus-varpi-monotone"));

    // tabulated family from a file
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eta.txt");
    std::fs::write(&path, "0 0.5\n10 0.25\n100 0.125\n").unwrap();
    let spec = format!("table:{}", path.display());
    let out = run(&["zfr", "--family", &spec, "--x", "1000", "--no-timestamp"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("omega[x=1e3"));
}
