//! The JobSpec schema ("fpint/1").
//!
//! Grids are JSON arrays; a complex number is a `[re, im]` pair. So
//! `"lambda": [2.5, 0.3]` is a grid of two real values while
//! `"lambda": [[2.5, 0.3]]` is the single value 2.5 + 0.3i. Upper limits
//! and radii accept the string `"inf"`.

use std::sync::Arc;

use fpint::catalog;
use fpint::expr::Expr;
use fpint::finitepart::{AnalyticFunction, Tail};
use fpint::laurent::taylor_coeffs;
use fpint::Complex as C;
use serde::{Deserialize, Serialize, Serializer};

pub const SCHEMA: &str = "fpint/1";
/// Taylor length used when an inline function gives only an evaluator.
pub const SAMPLED_TAYLOR_LEN: usize = 48;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Reglim,
    Fpi,
    Stieltjes,
    AsymptoticSweep,
    Verify,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Reglim => "reglim",
            Command::Fpi => "fpi",
            Command::Stieltjes => "stieltjes",
            Command::AsymptoticSweep => "asymptotic-sweep",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// A real or complex scalar.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum Cx {
    Real(f64),
    Pair([f64; 2]),
}

impl Cx {
    pub fn get(self) -> C {
        match self {
            Cx::Real(x) => C::from(x),
            Cx::Pair([a, b]) => C::new(a, b),
        }
    }
}

/// A positive real that may be infinite.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Num(f64),
    Str(String),
}

impl Bound {
    pub fn get(&self, what: &str) -> Result<f64, String> {
        match self {
            Bound::Num(x) if *x > 0.0 => Ok(*x),
            Bound::Num(x) => Err(format!("{what} must be positive, got {x}")),
            Bound::Str(s) if matches!(s.as_str(), "inf" | "infinity" | "Infinity") => Ok(f64::INFINITY),
            Bound::Str(s) => Err(format!("{what} must be a positive number or \"inf\", got \"{s}\"")),
        }
    }
}

/// Either a single value or a grid. `Many` is tried first so that a bare
/// pair of numbers reads as a grid.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Grid<T> {
    Many(Vec<T>),
    One(T),
}

impl<T: Clone> Grid<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            Grid::Many(v) => v.clone(),
            Grid::One(x) => vec![x.clone()],
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TailSpec {
    Named(String),
    Oscillatory { half_period: f64, phase: f64 },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineFunction {
    pub name: Option<String>,
    pub taylor0: Option<Vec<Cx>>,
    pub rho0: Option<Bound>,
    pub evaluator: String,
    pub tail: Option<TailSpec>,
    pub strip_left: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Name(String),
    Inline(InlineFunction),
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub tol: Option<f64>,
    pub max_terms: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: Option<String>,
    pub command: Command,
    pub function: Option<FunctionSpec>,
    #[serde(alias = "λ")]
    pub lambda: Option<Grid<Cx>>,
    #[serde(alias = "ν")]
    pub nu: Option<Grid<Cx>>,
    pub n: Option<Grid<u32>>,
    #[serde(alias = "ω")]
    pub omega: Option<Grid<Cx>>,
    pub a: Option<Grid<Bound>>,
    pub z0: Option<Grid<Cx>>,
    pub radius: Option<Grid<f64>>,
    /// fpi route: auto, oracle, mellin or contour.
    pub method: Option<String>,
    pub suite: Option<String>,
    pub output: Option<Format>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl JobSpec {
    pub fn parse(src: &str) -> Result<JobSpec, String> {
        let job: JobSpec = serde_json::from_str(src).map_err(|e| format!("invalid JobSpec: {e}"))?;
        if let Some(s) = &job.schema {
            if s != SCHEMA {
                return Err(format!("schema \"{s}\" is not supported; expected \"{SCHEMA}\""));
            }
        }
        Ok(job)
    }

    pub fn format(&self) -> Format {
        self.output.unwrap_or(if self.command == Command::AsymptoticSweep { Format::Csv } else { Format::Json })
    }
}

/// Nonempty grid of a required parameter.
pub fn grid<T: Clone>(g: &Option<Grid<T>>, name: &str, command: Command) -> Result<Vec<T>, String> {
    let v = g.as_ref().ok_or_else(|| format!("{} requires `{name}`", command.as_str()))?.values();
    if v.is_empty() {
        return Err(format!("grid `{name}` is empty"));
    }
    Ok(v)
}

pub fn bounds(g: &Option<Grid<Bound>>, name: &str, command: Command) -> Result<Vec<f64>, String> {
    grid(g, name, command)?.iter().map(|b| b.get(name)).collect()
}

pub fn function_label(f: &FunctionSpec) -> String {
    match f {
        FunctionSpec::Name(n) => n.clone(),
        FunctionSpec::Inline(i) => i.name.clone().unwrap_or_else(|| i.evaluator.clone()),
    }
}

/// Builds the kernel. Schema problems (unknown names, bad expressions)
/// come back as `Err`.
pub fn build_function(f: &FunctionSpec) -> Result<AnalyticFunction, String> {
    match f {
        FunctionSpec::Name(n) => catalog::get(n).map(|e| e.function).map_err(|e| e.to_string()),
        FunctionSpec::Inline(i) => build_inline(i),
    }
}

fn build_inline(i: &InlineFunction) -> Result<AnalyticFunction, String> {
    let expr = Arc::new(Expr::parse(&i.evaluator).map_err(|e| e.to_string())?);
    let rho0 = match &i.rho0 {
        Some(b) => b.get("rho0")?,
        None => return Err("inline function requires `rho0`".into()),
    };
    let taylor0 = match &i.taylor0 {
        Some(t) if t.is_empty() => return Err("`taylor0` is empty".into()),
        Some(t) => t.iter().map(|c| c.get()).collect(),
        // Sampled on a circle well inside the disk of convergence.
        None => {
            let e = expr.clone();
            taylor_coeffs(move |z| e.eval(z), C::from(0.0), (0.5 * rho0).min(1.0), SAMPLED_TAYLOR_LEN - 1)
                .map_err(|err| format!("cannot sample taylor0 from the evaluator: {err}"))?
        }
    };
    let (er, ec) = (expr.clone(), expr);
    let name = i.name.clone().unwrap_or_else(|| i.evaluator.clone());
    let mut k = AnalyticFunction::new(name, Arc::new(move |t| er.eval(C::from(t)).unwrap_or(C::new(f64::NAN, f64::NAN))), taylor0, rho0)
        .with_complex(Arc::new(move |z| ec.eval(z).unwrap_or(C::new(f64::NAN, f64::NAN))));
    if let Some(t) = &i.tail {
        let tail = match t {
            TailSpec::Named(s) if s == "decaying" => Tail::Decaying,
            TailSpec::Named(s) => return Err(format!("unknown tail \"{s}\"; use \"decaying\" or {{half_period, phase}}")),
            TailSpec::Oscillatory { half_period, phase } if *half_period > 0.0 => {
                Tail::Oscillatory { half_period: *half_period, phase: *phase }
            }
            TailSpec::Oscillatory { .. } => return Err("tail half_period must be positive".into()),
        };
        k = k.with_tail(tail, i.strip_left.unwrap_or(0.0));
    }
    Ok(k)
}

pub fn ser_c<S: Serializer>(c: &C, s: S) -> Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

pub fn ser_bound<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*x)
    }
}
