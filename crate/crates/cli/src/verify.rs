//! Fixture verification: the catalog's own fixtures plus any `*.json`
//! fixture files in the directory named by FPINT_FIXTURES.
//!
//! Fixture file layout:
//! `{"schema": "fpint/1", "fixtures": [{"kind": "fpi", "function": "one",
//! "lambda": 2, "n": 0, "a": 1, "value": -1, "tol": 1e-12}, ...]}`.
//! Stieltjes fixtures use `"kind": "stieltjes"` with `nu`, `n`, `omega`, `a`.

use std::fmt::Write as _;
use std::path::Path;

use fpint::catalog::{self, NAMES};
use fpint::finitepart::{fpi, AnalyticFunction};
use fpint::stieltjes::{stieltjes_eval_with, StieltjesOptions};
use fpint::Complex as C;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::job::{build_function, function_label, ser_bound, ser_c, Bound, Cx, Format, FunctionSpec, JobSpec, SCHEMA};
use crate::run::{num, to_json, Failure, Outcome, Resolved};

pub const DEFAULT_SUITE: &str = "catalog-fixtures";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureFile {
    schema: Option<String>,
    fixtures: Vec<FixtureSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureSpec {
    kind: String,
    function: FunctionSpec,
    lambda: Option<Cx>,
    nu: Option<Cx>,
    n: u32,
    omega: Option<Cx>,
    a: Bound,
    value: Cx,
    tol: f64,
}

#[derive(Clone, Copy)]
enum Kind {
    Fpi { lambda: C },
    Stieltjes { nu: C, omega: C },
}

struct Case {
    source: String,
    function: String,
    kernel: AnalyticFunction,
    kind: Kind,
    n: u32,
    a: f64,
    expected: C,
    tol: f64,
}

#[derive(Serialize)]
struct Row {
    source: String,
    function: String,
    kind: &'static str,
    #[serde(serialize_with = "ser_c")]
    parameter: C,
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    omega: Option<C>,
    n: u32,
    #[serde(serialize_with = "ser_bound")]
    a: f64,
    #[serde(serialize_with = "ser_c")]
    expected: C,
    #[serde(serialize_with = "ser_opt")]
    got: Option<C>,
    deviation: Option<f64>,
    tol: f64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn ser_opt<S: serde::Serializer>(c: &Option<C>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => ser_c(c, s),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: &'static str,
    command: &'static str,
    suite: &'a str,
    passed: bool,
    total: usize,
    failures: usize,
    results: Vec<Row>,
}

fn catalog_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for name in NAMES {
        let e = catalog::get(name).expect("catalog names resolve");
        let source = format!("catalog:{name}");
        for f in &e.known_fpi {
            out.push(Case {
                source: source.clone(),
                function: name.into(),
                kernel: e.function.clone(),
                kind: Kind::Fpi { lambda: f.lambda },
                n: f.n,
                a: f.a,
                expected: f.value,
                tol: f.tol,
            });
        }
        for s in &e.known_stieltjes {
            out.push(Case {
                source: source.clone(),
                function: name.into(),
                kernel: e.function.clone(),
                kind: Kind::Stieltjes { nu: s.nu, omega: s.omega },
                n: s.n,
                a: s.a,
                expected: s.value,
                tol: s.tol,
            });
        }
    }
    out
}

fn file_cases(dir: &Path) -> Result<Vec<Case>, Failure> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Failure::Schema(format!("FPINT_FIXTURES {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    // Directory order is platform dependent.
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let src = std::fs::read_to_string(&p).map_err(|e| Failure::Schema(format!("{}: {e}", p.display())))?;
        let file: FixtureFile = serde_json::from_str(&src).map_err(|e| Failure::Schema(format!("{}: {e}", p.display())))?;
        if file.schema.as_deref().is_some_and(|s| s != SCHEMA) {
            return Err(Failure::Schema(format!("{}: schema must be \"{SCHEMA}\"", p.display())));
        }
        let fname = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        for (i, f) in file.fixtures.into_iter().enumerate() {
            let at = format!("{fname}#{i}");
            let bad = |m: String| Failure::Schema(format!("{at}: {m}"));
            let kernel = build_function(&f.function).map_err(bad)?;
            let kind = match (f.kind.as_str(), f.lambda, f.nu, f.omega) {
                ("fpi", Some(l), None, None) => Kind::Fpi { lambda: l.get() },
                ("stieltjes", None, Some(nu), Some(w)) => Kind::Stieltjes { nu: nu.get(), omega: w.get() },
                ("fpi", ..) => return Err(bad("fpi fixtures take `lambda` only".into())),
                ("stieltjes", ..) => return Err(bad("stieltjes fixtures take `nu` and `omega`".into())),
                (k, ..) => return Err(bad(format!("unknown kind \"{k}\""))),
            };
            if !(f.tol > 0.0) {
                return Err(bad("tol must be positive".into()));
            }
            out.push(Case {
                source: format!("file:{at}"),
                function: function_label(&f.function),
                kernel,
                kind,
                n: f.n,
                a: f.a.get("a").map_err(bad)?,
                expected: f.value.get(),
                tol: f.tol,
            });
        }
    }
    Ok(out)
}

fn check(case: &Case, res: &Resolved) -> Row {
    // Fixtures carry their own tolerances; compute well below them.
    let opts = StieltjesOptions { tol: 1e-14, j_max: res.max_terms };
    let got = match case.kind {
        Kind::Fpi { lambda } => fpi(&case.kernel, lambda, case.n, case.a).map(|r| r.value),
        Kind::Stieltjes { nu, omega } => stieltjes_eval_with(&case.kernel, nu, case.n, omega, case.a, &opts).map(|r| r.total),
    };
    let (parameter, omega, kind) = match case.kind {
        Kind::Fpi { lambda } => (lambda, None, "fpi"),
        Kind::Stieltjes { nu, omega } => (nu, Some(omega), "stieltjes"),
    };
    let (got, deviation, error) = match got {
        Ok(v) => (Some(v), Some((v - case.expected).norm()), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    let passed = deviation.is_some_and(|d| d <= case.tol);
    Row {
        source: case.source.clone(),
        function: case.function.clone(),
        kind,
        parameter,
        omega,
        n: case.n,
        a: case.a,
        expected: case.expected,
        got,
        deviation,
        tol: case.tol,
        passed,
        error,
    }
}

pub(crate) fn run_verify(job: &JobSpec, res: &Resolved, fixtures_dir: Option<&Path>) -> Result<Outcome, Failure> {
    let suite = job.suite.as_deref().unwrap_or(DEFAULT_SUITE);
    if suite != DEFAULT_SUITE {
        return Err(Failure::Schema(format!("unknown suite \"{suite}\"; available: {DEFAULT_SUITE}")));
    }
    let mut cases = catalog_cases();
    if let Some(dir) = fixtures_dir {
        cases.extend(file_cases(dir)?);
    }
    let rows: Vec<Row> = cases.par_iter().map(|c| check(c, res)).collect();
    let failures = rows.iter().filter(|r| !r.passed).count();
    let text = match job.format() {
        Format::Json => {
            let report = Report { schema: SCHEMA, command: "verify", suite, passed: failures == 0, total: rows.len(), failures, results: rows };
            to_json(&report)
        }
        Format::Csv => {
            let mut s = String::from("source,function,kind,parameter_re,parameter_im,omega_re,n,a,expected_re,got_re,deviation,tol,status\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.source,
                    r.function.replace(',', ";"),
                    r.kind,
                    num(r.parameter.re),
                    num(r.parameter.im),
                    r.omega.map(|w| num(w.re)).unwrap_or_default(),
                    r.n,
                    if r.a.is_infinite() { "inf".into() } else { num(r.a) },
                    num(r.expected.re),
                    r.got.map(|g| num(g.re)).unwrap_or_default(),
                    r.deviation.map(num).unwrap_or_default(),
                    num(r.tol),
                    if r.passed { "PASS" } else { "FAIL" }
                );
            }
            s
        }
    };
    Ok(Outcome { text, code: if failures == 0 { 0 } else { 4 } })
}
