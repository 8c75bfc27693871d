use std::fmt::Write as _;

use fpint::expr::Expr;
use fpint::finitepart::{fpi, fpi_canonical_oracle, fpi_contour, fpi_mellin, AnalyticFunction, DEFAULT_EPS_SCHEDULE};
use fpint::laurent::{classify, laurent_coeffs, reglim, SingularityClass, DEFAULT_M_PROBE};
use fpint::stieltjes::{asymptotic_leading, stieltjes_eval_with, StieltjesOptions};
use fpint::{Complex as C, Error};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::job::{bounds, build_function, function_label, grid, ser_bound, ser_c, Command, Format, FunctionSpec, JobSpec, SCHEMA};
use crate::verify;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 200;

/// Exit codes: 2 schema, 3 math domain, 4 tolerance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Schema(String),
    Domain(String),
    Tolerance(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Schema(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Tolerance(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Schema(m) | Failure::Domain(m) | Failure::Tolerance(m) => m,
        }
    }

    fn from_math(context: String, e: Error) -> Failure {
        let m = format!("{context}: {e}");
        match e {
            Error::Parse(_) | Error::UnknownFunction(_) => Failure::Schema(m),
            e if e.is_tolerance_failure() => Failure::Tolerance(m),
            _ => Failure::Domain(m),
        }
    }
}

/// Command-line overrides; `None` defers to the JobSpec, then the defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    pub tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub threads: Option<usize>,
}

/// Output text plus exit code. Verify reports failing fixtures with code 4
/// but still emits the whole table.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub(crate) struct Resolved {
    pub tol: f64,
    pub max_terms: usize,
}

fn resolve(job: &JobSpec, s: &Settings) -> Result<Resolved, Failure> {
    let tol = s.tol.or(job.tolerances.tol).unwrap_or(DEFAULT_TOL);
    let max_terms = s.max_terms.or(job.tolerances.max_terms).unwrap_or(DEFAULT_MAX_TERMS);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Failure::Schema(format!("tol must lie in (0, 1), got {tol}")));
    }
    if max_terms == 0 {
        return Err(Failure::Schema("max_terms must be positive".into()));
    }
    Ok(Resolved { tol, max_terms })
}

pub fn run(job: &JobSpec, settings: &Settings, fixtures_dir: Option<&std::path::Path>) -> Result<Outcome, Failure> {
    let res = resolve(job, settings)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = settings.threads {
        if t == 0 {
            return Err(Failure::Schema("threads must be positive".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Failure::Domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match job.command {
        Command::Reglim => run_reglim(job, &res),
        Command::Fpi => run_fpi(job, &res),
        Command::Stieltjes => run_stieltjes(job, &res),
        Command::AsymptoticSweep => run_sweep(job, &res),
        Command::Verify => verify::run_verify(job, &res, fixtures_dir),
    })
}

fn schema<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Schema)
}

fn kernel(job: &JobSpec) -> Result<(AnalyticFunction, String), Failure> {
    let f = job.function.as_ref().ok_or_else(|| Failure::Schema(format!("{} requires `function`", job.command.as_str())))?;
    Ok((schema(build_function(f))?, function_label(f)))
}

/// Evaluates every grid point on the pool; results keep grid order and the
/// first failure in grid order wins.
fn par_map<P: Sync, R: Send>(points: &[P], f: impl Fn(&P) -> Result<R, Failure> + Sync + Send) -> Result<Vec<R>, Failure> {
    points.par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

fn check_error(context: &str, value: C, error: f64, tol: f64) -> Result<(), Failure> {
    if !(error <= tol * value.norm().max(1.0)) {
        return Err(Failure::Tolerance(format!("{context}: error estimate {error:e} exceeds tol {tol:e}")));
    }
    Ok(())
}

/// Indented JSON with arrays of scalars (complex pairs, mostly) kept on
/// one line.
pub(crate) fn to_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("plain data serializes");
    let mut s = String::new();
    write_value(&mut s, &v, 0);
    s.push('\n');
    s
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalars serialize").replace(',', ", "));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalars serialize")),
    }
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema: &'static str,
    command: &'static str,
    function: &'a str,
    results: Vec<T>,
}

/// Shortest round-trip text, in exponent form outside [1e-4, 1e15).
pub(crate) fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn bound_str(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        num(x)
    }
}

// ---- reglim ----

#[derive(Serialize)]
struct ReglimRecord {
    #[serde(serialize_with = "ser_c")]
    z0: C,
    radius: f64,
    #[serde(serialize_with = "ser_c")]
    value: C,
    error: f64,
    nodes: usize,
    singularity: String,
}

fn run_reglim(job: &JobSpec, res: &Resolved) -> Result<Outcome, Failure> {
    let f = job.function.as_ref().ok_or_else(|| Failure::Schema("reglim requires `function`".into()))?;
    // Catalog kernels use their complex evaluator; inline functions need
    // only an expression in z.
    let eval: Box<dyn Fn(C) -> fpint::Result<C> + Send + Sync> = match f {
        FunctionSpec::Name(_) => {
            let k = schema(build_function(f))?;
            Box::new(move |z| k.at_complex(z))
        }
        FunctionSpec::Inline(i) => {
            let e = Expr::parse(&i.evaluator).map_err(|e| Failure::Schema(e.to_string()))?;
            Box::new(move |z| e.eval(z))
        }
    };
    let z0s = schema(grid(&job.z0, "z0", job.command))?;
    let radii = schema(grid(&job.radius, "radius", job.command))?;
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(Failure::Schema(format!("radius must be positive and finite, got {r}")));
    }
    let points: Vec<(C, f64)> = z0s.iter().flat_map(|z| radii.iter().map(move |r| (z.get(), *r))).collect();
    let records = par_map(&points, |&(z0, r)| {
        let ctx = format!("reglim at z0 = {z0}, radius = {r}");
        let out = reglim(&eval, z0, r).map_err(|e| Failure::from_math(ctx.clone(), e))?;
        check_error(&ctx, out.value, out.error, res.tol)?;
        let m = DEFAULT_M_PROBE as i32;
        let class = laurent_coeffs(&eval, z0, r, -m, 0).map(|x| classify(&x, DEFAULT_M_PROBE)).map_err(|e| Failure::from_math(ctx, e))?;
        let singularity = match class {
            SingularityClass::RegularOrRemovable => "regular_or_removable".to_string(),
            SingularityClass::Pole(p) => format!("pole_{p}"),
            SingularityClass::EssentialSuspected => "essential_suspected".to_string(),
        };
        Ok(ReglimRecord { z0, radius: r, value: out.value, error: out.error, nodes: out.nodes, singularity })
    })?;
    let label = function_label(f);
    let text = match job.format() {
        Format::Json => to_json(&Envelope { schema: SCHEMA, command: "reglim", function: &label, results: records }),
        Format::Csv => {
            let mut s = String::from("z0_re,z0_im,radius,value_re,value_im,error,nodes,singularity\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    num(r.z0.re),
                    num(r.z0.im),
                    num(r.radius),
                    num(r.value.re),
                    num(r.value.im),
                    num(r.error),
                    r.nodes,
                    r.singularity
                );
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

// ---- fpi ----

#[derive(Serialize)]
struct TermRecord {
    #[serde(serialize_with = "ser_c")]
    eps_power: C,
    log_power: u32,
    #[serde(serialize_with = "ser_c")]
    coeff: C,
}

#[derive(Serialize)]
struct FpiRecord {
    #[serde(serialize_with = "ser_c")]
    lambda: C,
    n: u32,
    #[serde(serialize_with = "ser_bound")]
    a: f64,
    #[serde(serialize_with = "ser_c")]
    value: C,
    error: Option<f64>,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps_used: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_c")]
    c_eps: Option<C>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    divergent_terms: Vec<TermRecord>,
}

fn ser_opt_c<S: serde::Serializer>(c: &Option<C>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => ser_c(c, s),
        None => s.serialize_none(),
    }
}

fn fpi_point(k: &AnalyticFunction, method: &str, lambda: C, n: u32, a: f64, tol: f64) -> Result<FpiRecord, Failure> {
    let ctx = format!("fpi at lambda = {lambda}, n = {n}, a = {}", bound_str(a));
    let math = |e| Failure::from_math(ctx.clone(), e);
    let rec = match method {
        "auto" => {
            let r = fpi(k, lambda, n, a).map_err(math)?;
            let eps_used = (r.eps_used > 0.0).then_some(r.eps_used);
            FpiRecord {
                lambda,
                n,
                a,
                value: r.value,
                error: Some(r.err_est),
                method: r.method.as_str().into(),
                eps_used,
                c_eps: eps_used.map(|_| r.c_eps),
                divergent_terms: r
                    .d_eps_terms
                    .iter()
                    .map(|t| TermRecord { eps_power: t.eps_power, log_power: t.log_power, coeff: t.coeff })
                    .collect(),
            }
        }
        "oracle" => {
            let r = fpi_canonical_oracle(k, lambda, n, a, &DEFAULT_EPS_SCHEDULE).map_err(math)?;
            FpiRecord::bare(lambda, n, a, r.value, Some(r.error), "canonical_oracle")
        }
        "mellin" => {
            let r = fpi_mellin(k, lambda, n, a).map_err(math)?;
            FpiRecord::bare(lambda, n, a, r.value, Some(r.err_est), r.method.as_str())
        }
        "contour" => {
            let v = fpi_contour(k, lambda, n, a, None).map_err(math)?;
            FpiRecord::bare(lambda, n, a, v, None, "contour")
        }
        other => return Err(Failure::Schema(format!("unknown method \"{other}\"; use auto, oracle, mellin or contour"))),
    };
    if let Some(e) = rec.error {
        check_error(&ctx, rec.value, e, tol)?;
    }
    Ok(rec)
}

impl FpiRecord {
    fn bare(lambda: C, n: u32, a: f64, value: C, error: Option<f64>, method: &str) -> Self {
        FpiRecord { lambda, n, a, value, error, method: method.into(), eps_used: None, c_eps: None, divergent_terms: Vec::new() }
    }
}

fn run_fpi(job: &JobSpec, res: &Resolved) -> Result<Outcome, Failure> {
    let (k, label) = kernel(job)?;
    let lambdas = schema(grid(&job.lambda, "lambda", job.command))?;
    let ns = schema(grid(&job.n, "n", job.command))?;
    let as_ = schema(bounds(&job.a, "a", job.command))?;
    let method = job.method.clone().unwrap_or_else(|| "auto".into());
    let mut points = Vec::new();
    for l in &lambdas {
        for &n in &ns {
            for &a in &as_ {
                points.push((l.get(), n, a));
            }
        }
    }
    let records = par_map(&points, |&(l, n, a)| fpi_point(&k, &method, l, n, a, res.tol))?;
    let text = match job.format() {
        Format::Json => to_json(&Envelope { schema: SCHEMA, command: "fpi", function: &label, results: records }),
        Format::Csv => {
            let mut s = String::from("lambda_re,lambda_im,n,a,value_re,value_im,error,method\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    num(r.lambda.re),
                    num(r.lambda.im),
                    r.n,
                    bound_str(r.a),
                    num(r.value.re),
                    num(r.value.im),
                    r.error.map(num).unwrap_or_default(),
                    r.method
                );
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

// ---- stieltjes ----

#[derive(Serialize)]
struct StieltjesRecord {
    #[serde(serialize_with = "ser_c")]
    nu: C,
    n: u32,
    #[serde(serialize_with = "ser_c")]
    omega: C,
    #[serde(serialize_with = "ser_bound")]
    a: f64,
    #[serde(serialize_with = "ser_c")]
    total: C,
    #[serde(serialize_with = "ser_c")]
    series_sum: C,
    #[serde(serialize_with = "ser_c")]
    singular_term: C,
    #[serde(serialize_with = "ser_c")]
    prefactor: C,
    terms_used: usize,
    tail_estimate: f64,
}

fn stieltjes_point(k: &AnalyticFunction, nu: C, n: u32, omega: C, a: f64, res: &Resolved) -> Result<StieltjesRecord, Failure> {
    let ctx = format!("stieltjes at nu = {nu}, n = {n}, omega = {omega}, a = {}", bound_str(a));
    let opts = StieltjesOptions { tol: res.tol, j_max: res.max_terms };
    let r = stieltjes_eval_with(k, nu, n, omega, a, &opts).map_err(|e| Failure::from_math(ctx.clone(), e))?;
    if r.truncated {
        return Err(Failure::Tolerance(format!(
            "{ctx}: series not converged after {} terms (tail estimate {:e}); raise --max-terms",
            r.j_used, r.tail_est
        )));
    }
    Ok(StieltjesRecord {
        nu,
        n,
        omega,
        a,
        total: r.total,
        series_sum: r.series_sum,
        singular_term: r.singular_term,
        prefactor: r.prefactor,
        terms_used: r.j_used,
        tail_estimate: r.tail_est,
    })
}

fn run_stieltjes(job: &JobSpec, res: &Resolved) -> Result<Outcome, Failure> {
    let (k, label) = kernel(job)?;
    let nus = schema(grid(&job.nu, "nu", job.command))?;
    let ns = schema(grid(&job.n, "n", job.command))?;
    let omegas = schema(grid(&job.omega, "omega", job.command))?;
    let as_ = schema(bounds(&job.a, "a", job.command))?;
    let mut points = Vec::new();
    for nu in &nus {
        for &n in &ns {
            for w in &omegas {
                for &a in &as_ {
                    points.push((nu.get(), n, w.get(), a));
                }
            }
        }
    }
    let records = par_map(&points, |&(nu, n, w, a)| stieltjes_point(&k, nu, n, w, a, res))?;
    let text = match job.format() {
        Format::Json => to_json(&Envelope { schema: SCHEMA, command: "stieltjes", function: &label, results: records }),
        Format::Csv => {
            let mut s = String::from("nu_re,nu_im,n,omega_re,omega_im,a,total_re,total_im,series_sum_re,series_sum_im,singular_term_re,singular_term_im,terms_used,tail_estimate\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    num(r.nu.re),
                    num(r.nu.im),
                    r.n,
                    num(r.omega.re),
                    num(r.omega.im),
                    bound_str(r.a),
                    num(r.total.re),
                    num(r.total.im),
                    num(r.series_sum.re),
                    num(r.series_sum.im),
                    num(r.singular_term.re),
                    num(r.singular_term.im),
                    r.terms_used,
                    num(r.tail_estimate)
                );
            }
            s
        }
    };
    Ok(Outcome { text, code: 0 })
}

// ---- asymptotic sweep ----

#[derive(Serialize)]
struct SweepRecord {
    omega: f64,
    #[serde(serialize_with = "ser_c")]
    exact_total: C,
    #[serde(serialize_with = "ser_c")]
    leading_term: C,
    #[serde(serialize_with = "ser_c")]
    ratio: C,
    #[serde(serialize_with = "ser_c")]
    series_sum: C,
    #[serde(serialize_with = "ser_c")]
    singular_term: C,
}

fn single<T: Clone>(v: Vec<T>, name: &str) -> Result<T, Failure> {
    if v.len() != 1 {
        return Err(Failure::Schema(format!("asymptotic-sweep takes a single `{name}`, got {} values", v.len())));
    }
    Ok(v[0].clone())
}

fn run_sweep(job: &JobSpec, res: &Resolved) -> Result<Outcome, Failure> {
    let (k, label) = kernel(job)?;
    let nu = single(schema(grid(&job.nu, "nu", job.command))?, "nu")?.get();
    let n = single(schema(grid(&job.n, "n", job.command))?, "n")?;
    let a = single(schema(bounds(&job.a, "a", job.command))?, "a")?;
    let omegas: Vec<f64> = schema(grid(&job.omega, "omega", job.command))?
        .iter()
        .map(|w| match w {
            crate::job::Cx::Real(x) if *x > 0.0 => Ok(*x),
            _ => Err(Failure::Schema("sweep omegas must be positive reals".into())),
        })
        .collect::<Result<_, _>>()?;
    if omegas.windows(2).any(|p| !(p[1] < p[0])) {
        return Err(Failure::Schema("sweep omegas must be strictly descending".into()));
    }
    let records = par_map(&omegas, |&w| {
        let r = stieltjes_point(&k, nu, n, C::from(w), a, res)?;
        let lead = asymptotic_leading(&k, nu, n, C::from(w))
            .map_err(|e| Failure::from_math(format!("leading term at omega = {w}"), e))?;
        Ok(SweepRecord {
            omega: w,
            exact_total: r.total,
            leading_term: lead,
            ratio: r.total / lead,
            series_sum: r.series_sum,
            singular_term: r.singular_term,
        })
    })?;
    let text = match job.format() {
        Format::Json => to_json(&Envelope { schema: SCHEMA, command: "asymptotic-sweep", function: &label, results: records }),
        Format::Csv => sweep_csv(&records),
    };
    Ok(Outcome { text, code: 0 })
}

// Real parts under the documented headers; imaginary columns are appended
// only when some value is complex.
fn sweep_csv(rows: &[SweepRecord]) -> String {
    let cols = |r: &SweepRecord| [r.exact_total, r.leading_term, r.ratio, r.series_sum, r.singular_term];
    let complex = rows.iter().any(|r| cols(r).iter().any(|c| c.im != 0.0));
    let mut s = String::from("omega,exact_total,leading_term,ratio,series_sum,singular_term");
    if complex {
        s.push_str(",exact_total_im,leading_term_im,ratio_im,series_sum_im,singular_term_im");
    }
    s.push('\n');
    for r in rows {
        let c = cols(r);
        s.push_str(&num(r.omega));
        for v in &c {
            let _ = write!(s, ",{}", num(v.re));
        }
        if complex {
            for v in &c {
                let _ = write!(s, ",{}", num(v.im));
            }
        }
        s.push('\n');
    }
    s
}
