use std::process::{Command, Output};

use serde_json::Value;

fn qspecial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspecial"))
        .args(args)
        .env_remove("QSPECIAL_TAIL_EPS")
        .env_remove("QSPECIAL_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn eval_qpoch_finite() {
    let out = qspecial(&["eval", "qpoch", "--a", "0.5", "--q", "0.5", "--n", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(f(&v, "value_re"), 0.375);
    assert_eq!(f(&v, "value_im"), 0.0);
    assert_eq!(v["converged"], Value::Bool(true));
    for key in ["abs_err_est", "terms_used"] {
        assert!(v.get(key).is_some());
    }
}

#[test]
fn eval_poisson_series_at_zero() {
    let out = qspecial(&["eval", "poisson_series", "--t", "0", "--x", "0.3", "--y", "-0.2", "--tau", "0.1", "--q", "0.5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(f(&json(&out), "value_re"), 1.0);
}

#[test]
fn eval_complex_arguments() {
    let out = qspecial(&["eval", "qpoch", "--a", "0.5+0.5i", "--q", "0.5", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(f(&v, "value_re"), 0.5);
    assert_eq!(f(&v, "value_im"), -0.5);
}

#[test]
fn eval_w87_outside_disk_is_domain_error() {
    let out = qspecial(&[
        "eval", "w87", "--a", "0.5", "--b", "0.1", "--c", "0.2", "--d", "0.3", "--e", "0.1", "--f", "0.2", "--q", "0.5", "--z",
        "1.2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn eval_usage_errors() {
    assert_eq!(code(&qspecial(&["eval", "nosuch", "--q", "0.5"])), 2);
    assert_eq!(code(&qspecial(&["eval", "qpoch", "--a", "0.5"])), 2);
    assert_eq!(code(&qspecial(&["eval", "qpoch", "--a", "0.5", "--q", "1.5"])), 2);
    assert_eq!(code(&qspecial(&["eval", "qpoch", "--a", "0.5", "--q", "0.5", "--bogus", "1"])), 2);
}

#[test]
fn eval_hits_term_cap() {
    let out = qspecial(&["eval", "qpoch", "--a", "0.5", "--q", "0.5", "--max-terms", "3"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["converged"], Value::Bool(false));
}

#[test]
fn environment_sets_default_policy() {
    let bin = env!("CARGO_BIN_EXE_qspecial");
    let envs = |k: &str, v: &str, extra: &[&str]| {
        let mut args = vec!["eval", "qpoch", "--a", "0.5", "--q", "0.5"];
        args.extend_from_slice(extra);
        Command::new(bin).args(&args).env(k, v).output().unwrap()
    };
    assert_eq!(code(&envs("QSPECIAL_MAX_TERMS", "3", &[])), 3);
    assert_eq!(code(&envs("QSPECIAL_MAX_TERMS", "3", &["--max-terms", "500"])), 0);
    assert_eq!(code(&envs("QSPECIAL_TAIL_EPS", "abc", &[])), 2);
    let loose = json(&envs("QSPECIAL_TAIL_EPS", "1e-3", &[]));
    let tight = json(&qspecial(&["eval", "qpoch", "--a", "0.5", "--q", "0.5"]));
    assert!(f(&loose, "terms_used") < f(&tight, "terms_used"));
}

#[test]
fn verify_theorem41_l0() {
    let out = qspecial(&["verify", "theorem41", "--l", "0", "--tau", "0.3", "--sigma", "-0.2", "--mu", "0.4", "--q", "0.5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(f(&v, "rel_residual") <= 1e-14);
    for key in [
        "identity_id",
        "params",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "abs_residual",
        "rel_residual",
        "pass",
        "tolerance",
        "seed",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_cor44() {
    let out = qspecial(&["verify", "cor44", "--l", "5", "--q", "0.4", "--psi", "0.7", "--theta", "1.1", "--phi", "1.9"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(f(&v, "rel_residual") <= 1e-9);
    assert_eq!(f(&v, "tolerance"), 1e-9);
}

#[test]
fn verify_lemma45_variants() {
    let pinned = qspecial(&["verify", "lemma45", "--n", "2"]);
    assert_eq!(code(&pinned), 0);
    let rejected = qspecial(&["verify", "lemma45", "--n", "2", "--variant", "single"]);
    assert_eq!(code(&rejected), 1);
    let v = json(&rejected);
    assert_eq!(v["pass"], Value::Bool(false));
    assert!(v["note"].as_str().unwrap().contains("rejected"));
    let disc = qspecial(&["verify", "lemma45", "--variant", "discriminate"]);
    assert_eq!(code(&disc), 0);
}

#[test]
fn verify_multi_report_identity_prints_array() {
    let out = qspecial(&["verify", "families", "--n", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out).as_array().unwrap().len(), 4);
}

#[test]
fn verify_tolerance_override_can_fail() {
    let out = qspecial(&["verify", "theorem41", "--l", "3", "--tol", "0"]);
    let v = json(&out);
    let expect = if f(&v, "abs_residual") == 0.0 { 0 } else { 1 };
    assert_eq!(code(&out), expect);
}

#[test]
fn verify_unknown_identity() {
    let out = qspecial(&["verify", "theorem99", "--l", "0"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown identity"));
}

#[test]
fn suite_zero_trials() {
    let out = qspecial(&["suite", "--trials", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out), Value::Array(vec![]));
}

#[test]
fn suite_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = qspecial(&["suite", "--seed", "7", "--trials", "3", "--output", path.to_str().unwrap()]);
        assert!(out.stdout.is_empty());
        let stderr = String::from_utf8_lossy(&out.stderr).to_string();
        assert_eq!(stderr.lines().filter(|l| l.starts_with("suite: ")).count(), 1);
        let reports: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        (code(&out), reports)
    };
    let (c1, a) = run("a.json");
    let (c2, b) = run("b.json");
    assert_eq!(c1, c2);
    assert_eq!(a.len(), b.len());
    assert!(!a.is_empty());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x["identity_id"], y["identity_id"]);
        assert_eq!(x["pass"], y["pass"]);
        assert_eq!(x["params"], y["params"]);
    }
}

fn read_csv(bytes: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn sweep_theorem41_over_tau() {
    let out = qspecial(&["sweep", "theorem41", "--grid", "tau=-0.4:0.4:0.2", "--l", "2", "--q", "0.5"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = read_csv(&out.stdout);
    assert_eq!(header.join(","), "param1,param2,param3,lhs_re,lhs_im,rhs_re,rhs_im,residual,pass");
    assert_eq!(rows.len(), 5);
    let taus: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(taus, vec![-0.4, -0.2, 0.0, 0.2, 0.4]);
    for r in &rows {
        assert!(r[1].is_empty() && r[2].is_empty());
        assert!(r[7].parse::<f64>().unwrap() <= 1e-8);
        assert_eq!(r[8], "true");
    }
}

#[test]
fn sweep_multi_axis_order_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = qspecial(&[
        "sweep",
        "cor44",
        "--grid",
        "l=0,3",
        "--grid",
        "psi=0.4:0.8:0.2",
        "--q",
        "0.3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let (_, rows) = read_csv(&std::fs::read(&path).unwrap());
    assert_eq!(rows.len(), 6);
    assert_eq!((rows[0][0].as_str(), rows[0][1].as_str()), ("0", "0.4"));
    assert_eq!((rows[1][0].as_str(), rows[1][1].as_str()), ("0", "0.6"));
    assert_eq!((rows[3][0].as_str(), rows[3][1].as_str()), ("3", "0.4"));

    // Each row's lhs/rhs must match a direct verification to 15 significant digits.
    for r in &rows {
        let v = json(&qspecial(&["verify", "cor44", "--l", &r[0], "--psi", &r[1], "--q", "0.3"]));
        for (i, key) in [(3, "lhs_re"), (4, "lhs_im"), (5, "rhs_re"), (6, "rhs_im")] {
            let a: f64 = r[i].parse().unwrap();
            let b = f(&v, key);
            assert!((a - b).abs() <= 1e-15 * b.abs().max(1e-300), "{key}: {a} vs {b}");
        }
    }
}

#[test]
fn sweep_failures_and_errors() {
    assert_eq!(code(&qspecial(&["sweep", "theorem41", "--grid", "tau=0:1"])), 2);
    assert_eq!(code(&qspecial(&["sweep", "theorem41", "--grid", "tau=a,b"])), 2);
    assert_eq!(code(&qspecial(&["sweep", "theorem41"])), 2);
    assert_eq!(
        code(&qspecial(&["sweep", "theorem41", "--grid", "a=0,1", "--grid", "b=0,1", "--grid", "c=0,1", "--grid", "d=0,1"])),
        2
    );
    assert_eq!(code(&qspecial(&["sweep", "kernels", "--grid", "points=1,2"])), 2);

    let out = qspecial(&["sweep", "lemma45", "--grid", "n=1,2", "--variant", "single"]);
    assert_eq!(code(&out), 1);
    let (_, rows) = read_csv(&out.stdout);
    assert!(rows.iter().all(|r| r[8] == "false"));
}
