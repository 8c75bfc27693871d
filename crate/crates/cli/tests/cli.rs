use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fpint(args: &[&str], stdin: &str, fixtures: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fpint"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("FPINT_FIXTURES");
    if let Some(d) = fixtures {
        cmd.env("FPINT_FIXTURES", d);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run_job(job: &str) -> Output {
    fpint(&["run"], job, None)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn c(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn fpi_job() {
    let v = json(&run_job(r#"{"command": "fpi", "function": "one", "lambda": 2, "n": 0, "a": 1}"#));
    assert_eq!(v["schema"], "fpint/1");
    let r = &v["results"][0];
    assert!((c(&r["value"]).0 + 1.0).abs() < 1e-12);
    assert_eq!(r["method"], "epsilon_representation");
    assert!(r["error"].as_f64().unwrap() < 1e-12);
    assert!(r["divergent_terms"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn stieltjes_job() {
    let v = json(&run_job(r#"{"command": "stieltjes", "function": "one", "nu": 0, "n": 0, "a": 1, "omega": 0.5}"#));
    let r = &v["results"][0];
    assert!((c(&r["total"]).0 - 3f64.ln()).abs() < 1e-12);
    for k in ["series_sum", "singular_term", "terms_used", "tail_estimate"] {
        assert!(!r[k].is_null(), "{k}");
    }
}

#[test]
fn grids_keep_order_and_complex_pairs() {
    let v = json(&run_job(r#"{"command": "fpi", "function": "one", "lambda": [3, [2.5, 0.5], 4], "n": 0, "a": 1}"#));
    let rs = v["results"].as_array().unwrap();
    assert_eq!(rs.len(), 3);
    assert_eq!(c(&rs[0]["lambda"]), (3.0, 0.0));
    assert_eq!(c(&rs[1]["lambda"]), (2.5, 0.5));
    assert!((c(&rs[2]["value"]).0 + 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn reglim_job() {
    let v = json(&run_job(r#"{"command": "reglim", "function": {"evaluator": "1/(z*(z+1)*(z+2))"}, "z0": 0, "radius": [0.5, 1.5]}"#));
    let rs = v["results"].as_array().unwrap();
    assert!((c(&rs[0]["value"]).0 + 0.75).abs() < 1e-10);
    assert!((c(&rs[1]["value"]).0 - 0.25).abs() < 1e-10);
    assert_eq!(rs[0]["singularity"], "pole_1");
}

#[test]
fn inline_function_with_sampled_taylor_data() {
    let inline = run_job(r#"{"command": "fpi", "function": {"evaluator": "1/(1+t)", "rho0": 1}, "lambda": [2, 2.5], "n": [0, 1], "a": 0.5}"#);
    let cat = run_job(r#"{"command": "fpi", "function": "reciprocal1p", "lambda": [2, 2.5], "n": [0, 1], "a": 0.5}"#);
    let (a, b) = (json(&inline), json(&cat));
    for i in 0..4 {
        let (x, y) = (c(&a["results"][i]["value"]), c(&b["results"][i]["value"]));
        assert!((x.0 - y.0).abs() < 1e-12, "point {i}");
    }
}

#[test]
fn identical_jobs_give_identical_bytes() {
    let jobs = [
        r#"{"command": "fpi", "function": "cos", "lambda": [0.5, 1, 1.5, 2, 2.5, 3], "n": [0, 1, 2], "a": "inf"}"#,
        r#"{"command": "stieltjes", "function": "reciprocal1p", "nu": [0, 0.3, 0.5], "n": [0, 1, 2], "omega": [0.05, 0.1, 0.25], "a": 0.5}"#,
        r#"{"command": "asymptotic-sweep", "function": "one", "nu": 0.5, "n": 1, "a": 1, "omega": [0.1, 0.01, 0.001]}"#,
    ];
    for job in jobs {
        let first = run_job(job);
        assert!(first.status.success());
        for threads in ["1", "3", "8"] {
            let again = fpint(&["--threads", threads, "run"], job, None);
            assert_eq!(first.stdout, again.stdout, "threads {threads}");
        }
    }
    let a = fpint(&["verify"], "", None);
    let b = fpint(&["--threads", "2", "verify"], "", None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suite_passes() {
    let out = fpint(&["verify"], "", None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["total"].as_u64().unwrap() >= 40);
    let csv = fpint(&["verify", "--format", "csv"], "", None);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",PASS")));
}

#[test]
fn fixture_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("a.json"),
        r#"{"schema": "fpint/1", "fixtures": [
            {"kind": "fpi", "function": "one", "lambda": 3, "n": 0, "a": 1, "value": -0.5, "tol": 1e-12},
            {"kind": "stieltjes", "function": "one", "nu": 0, "n": 0, "omega": 0.5, "a": 1, "value": 1.0986122886681098, "tol": 1e-12}
        ]}"#,
    )
    .unwrap();
    let ok = fpint(&["verify"], "", Some(dir.path()));
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    let from_file = v["results"].as_array().unwrap().iter().filter(|r| r["source"].as_str().unwrap().starts_with("file:")).count();
    assert_eq!(from_file, 2);

    std::fs::write(
        dir.path().join("b.json"),
        r#"{"fixtures": [{"kind": "fpi", "function": "one", "lambda": 3, "n": 0, "a": 1, "value": -0.6, "tol": 1e-12}]}"#,
    )
    .unwrap();
    let bad = fpint(&["verify"], "", Some(dir.path()));
    assert_eq!(bad.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["failures"], 1);

    std::fs::write(dir.path().join("c.json"), r#"{"fixtures": [{"kind": "fpi"}]}"#).unwrap();
    assert_eq!(fpint(&["verify"], "", Some(dir.path())).status.code(), Some(2));
}

#[test]
fn sweep_csv() {
    let out = run_job(r#"{"command": "asymptotic-sweep", "function": "cos", "nu": 0.5, "n": 0, "a": "inf", "omega": [0.1, 0.01, 0.001, 0.0001]}"#);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,exact_total,leading_term,ratio,series_sum,singular_term"));
    let ratios: Vec<f64> = lines.map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(ratios.len(), 4);
    assert!(ratios.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()));
    assert!((ratios[3] - 1.0).abs() < 0.01);
}

#[test]
fn schema_errors_exit_2() {
    let cases = [
        "not json",
        r#"{"command": "integrate"}"#,
        r#"{"schema": "fpint/2", "command": "fpi", "function": "one", "lambda": 2, "n": 0, "a": 1}"#,
        r#"{"command": "fpi", "function": "one", "lambda": [], "n": 0, "a": 1}"#,
        r#"{"command": "fpi", "function": "one", "n": 0, "a": 1}"#,
        r#"{"command": "fpi", "function": "sinc", "lambda": 2, "n": 0, "a": 1}"#,
        r#"{"command": "fpi", "function": {"evaluator": "1/(1+", "rho0": 1}, "lambda": 2, "n": 0, "a": 1}"#,
        r#"{"command": "fpi", "function": "one", "lambda": 2, "n": 0, "a": -1}"#,
        r#"{"command": "fpi", "function": "one", "lambda": 2, "n": 0, "a": 1, "colour": 3}"#,
        r#"{"command": "asymptotic-sweep", "function": "one", "nu": 0, "n": 1, "a": 1, "omega": []}"#,
        r#"{"command": "asymptotic-sweep", "function": "one", "nu": 0, "n": 1, "a": 1, "omega": [0.01, 0.1]}"#,
        r#"{"command": "verify", "suite": "nope"}"#,
    ];
    for job in cases {
        let out = run_job(job);
        assert_eq!(out.status.code(), Some(2), "{job}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_3() {
    let cases = [
        // No tail information for a = inf.
        r#"{"command": "fpi", "function": "one", "lambda": 2, "n": 0, "a": "inf"}"#,
        // |omega| beyond min(a, rho0).
        r#"{"command": "stieltjes", "function": "reciprocal1p", "nu": 0.3, "n": 0, "omega": 0.7, "a": 0.5}"#,
        r#"{"command": "stieltjes", "function": "one", "nu": 1, "n": 0, "omega": 0.1, "a": 1}"#,
    ];
    for job in cases {
        let out = run_job(job);
        assert_eq!(out.status.code(), Some(3), "{job}: {}", String::from_utf8_lossy(&out.stderr));
        let msg = String::from_utf8_lossy(&out.stderr);
        assert!(msg.contains("at "), "message names the grid point: {msg}");
    }
}

#[test]
fn tolerance_failures_exit_4() {
    let job = r#"{"command": "stieltjes", "function": "reciprocal1p", "nu": 0.4, "n": 0, "omega": 0.3, "a": 0.5}"#;
    assert_eq!(fpint(&["--max-terms", "3", "run"], job, None).status.code(), Some(4));
    assert_eq!(fpint(&["run"], job, None).status.code(), Some(0));
    let oracle = r#"{"command": "fpi", "function": "reciprocal1p", "lambda": 2.5, "n": 1, "a": 0.5, "method": "oracle"}"#;
    assert_eq!(fpint(&["--tol", "1e-15", "run"], oracle, None).status.code(), Some(4));
    assert_eq!(fpint(&["--tol", "1e-3", "run"], oracle, None).status.code(), Some(0));
}

#[test]
fn job_file_and_tolerances_block() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("job.json");
    std::fs::write(&p, r#"{"command": "stieltjes", "function": "reciprocal1p", "nu": 0.4, "n": 0, "omega": 0.3, "a": 0.5, "tolerances": {"max_terms": 3}}"#).unwrap();
    assert_eq!(fpint(&["run", p.to_str().unwrap()], "", None).status.code(), Some(4));
    // The flag overrides the file.
    assert_eq!(fpint(&["--max-terms", "400", "run", p.to_str().unwrap()], "", None).status.code(), Some(0));
}

#[test]
fn all_fpi_routes_are_selectable() {
    let mut values = Vec::new();
    for m in ["auto", "oracle", "mellin", "contour"] {
        let job = format!(r#"{{"command": "fpi", "function": "reciprocal1p", "lambda": 2.5, "n": 0, "a": 0.5, "method": "{m}"}}"#);
        let v = json(&fpint(&["--tol", "1e-4", "run"], &job, None));
        values.push(c(&v["results"][0]["value"]).0);
    }
    for v in &values {
        assert!((v - values[0]).abs() < 1e-7);
    }
}
