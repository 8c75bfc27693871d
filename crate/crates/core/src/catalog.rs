//! Named kernels with Taylor data, Mellin continuations and reference
//! values.
//!
//! | name           | k(t)                          | a        |
//! |----------------|-------------------------------|----------|
//! | `one`          | 1                             | finite   |
//! | `reciprocal1p` | 1/(1+t)                       | any      |
//! | `cos`          | cos(b t), `cos:<b>` sets b    | infinite |
//! | `j0`           | J0(t)                         | infinite |
//! | `y0_k0`        | Y0(t) - (2/pi) J0(t) ln t     | infinite |
//! | `y0_k1`        | (2/pi) J0(t)                  | infinite |
//! | `exp_neg`      | exp(-t)                       | infinite |

use std::f64::consts::{FRAC_2_PI, LN_2, PI};
use std::sync::Arc;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::finitepart::{fpi, mellin_star_eval, AnalyticFunction, MellinStar, MellinUpper, Parity, Tail};
use crate::specfun::{
    bessel_j0, bessel_y0, digamma, factorial, gamma, integrate_real, j0_series, EndpointMode, QuadratureSpec, EULER_GAMMA,
};
use crate::stieltjes::y0_mellin;

pub const TAYLOR_LEN: usize = 64;

pub const NAMES: [&str; 7] = ["one", "reciprocal1p", "cos", "j0", "y0_k0", "y0_k1", "exp_neg"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// A published closed form, re-derived and checked here.
    Literature,
    /// Elementary closed form.
    ClosedForm,
    /// Independent high-precision quadrature.
    Oracle,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FpiFixture {
    pub lambda: C,
    pub n: u32,
    pub a: f64,
    pub value: C,
    pub tol: f64,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug)]
pub struct StieltjesFixture {
    pub nu: C,
    pub n: u32,
    pub a: f64,
    pub omega: C,
    pub value: C,
    pub tol: f64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub function: AnalyticFunction,
    pub default_a: f64,
    pub known_fpi: Vec<FpiFixture>,
    pub known_stieltjes: Vec<StieltjesFixture>,
}

fn fx(lambda: f64, n: u32, a: f64, value: f64, tol: f64, provenance: Provenance) -> FpiFixture {
    FpiFixture { lambda: C::from(lambda), n, a, value: C::from(value), tol, provenance }
}

fn sx(nu: f64, n: u32, a: f64, omega: f64, value: f64, tol: f64, provenance: Provenance) -> StieltjesFixture {
    StieltjesFixture { nu: C::from(nu), n, a, omega: C::from(omega), value: C::from(value), tol, provenance }
}

fn coeffs(f: impl Fn(usize) -> f64) -> Vec<C> {
    (0..TAYLOR_LEN).map(|l| C::from(f(l))).collect()
}

fn all_positive(_: i64) -> bool {
    true
}

fn odd(j: i64) -> bool {
    j % 2 == 1
}

/// Looks up a kernel by name; `cos:<b>` selects the frequency b.
pub fn get(name: &str) -> Result<CatalogEntry> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => {
            let v = p.parse::<f64>().map_err(|_| Error::UnknownFunction(name.to_string()))?;
            (b, Some(v))
        }
        None => (name, None),
    };
    if param.is_some() && base != "cos" {
        return Err(Error::UnknownFunction(name.to_string()));
    }
    match base {
        "one" => Ok(one()),
        "reciprocal1p" => Ok(reciprocal1p()),
        "cos" => cos(param.unwrap_or(1.0)),
        "j0" => Ok(j0()),
        "y0_k0" => Ok(y0_k0()),
        "y0_k1" => Ok(y0_k1()),
        "exp_neg" => Ok(exp_neg()),
        _ => Err(Error::UnknownFunction(name.to_string())),
    }
}

fn one() -> CatalogEntry {
    let f = AnalyticFunction::new("one", Arc::new(|_| C::new(1.0, 0.0)), coeffs(|l| if l == 0 { 1.0 } else { 0.0 }), f64::INFINITY)
        .with_complex(Arc::new(|_| C::new(1.0, 0.0)))
        .with_parity(Parity::Even)
        .with_mellin(MellinStar {
            eval: Arc::new(|lam, a| {
                let s = C::new(1.0, 0.0) - lam;
                Ok((s * a.ln()).exp() / s)
            }),
            upper: MellinUpper::Finite,
            singular_at: Arc::new(|j| j == 1),
            valid_above: f64::NEG_INFINITY,
        });
    let mut known_fpi: Vec<FpiFixture> =
        (1..=10).map(|j| fx(j as f64 + 1.0, 0, 1.0, -1.0 / j as f64, 1e-12, Provenance::Literature)).collect();
    known_fpi.push(fx(1.0, 0, 1.0, 0.0, 1e-12, Provenance::Literature));
    known_fpi.push(fx(2.0, 1, 1.0, -1.0, 1e-12, Provenance::ClosedForm));
    known_fpi.push(fx(1.0, 1, 1.0, 0.0, 1e-12, Provenance::ClosedForm));
    known_fpi.push(fx(0.5, 0, 1.0, 2.0, 1e-12, Provenance::ClosedForm));
    known_fpi.push(fx(0.5, 1, 1.0, -4.0, 1e-12, Provenance::ClosedForm));
    known_fpi.push(fx(1.5, 0, 1.0, -2.0, 1e-12, Provenance::ClosedForm));
    let known_stieltjes = vec![
        sx(0.0, 0, 1.0, 0.5, 3f64.ln(), 1e-10, Provenance::Literature),
        sx(0.0, 0, 1.0, 0.1, 11f64.ln(), 1e-10, Provenance::Literature),
        sx(0.5, 0, 1.0, 0.25, 4.0 * 2f64.atan(), 1e-10, Provenance::Literature),
        // dilogarithm Li2(-2)
        sx(0.0, 1, 1.0, 0.5, -1.436_746_366_883_681, 1e-10, Provenance::ClosedForm),
    ];
    CatalogEntry { name: "one".into(), function: f, default_a: 1.0, known_fpi, known_stieltjes }
}

// \int_a^inf t^-lambda/(1+t) dt = a^(1-lambda) \int_0^1 u^(lambda-1)/(u+a) du, Re lambda > 0.
fn reciprocal_tail(lam: C, a: f64) -> Result<C> {
    let spec = QuadratureSpec { abs_tol: 1e-16, rel_tol: 1e-15, ..QuadratureSpec::default() }.with_mode(EndpointMode::SingularLeft);
    let r = integrate_real(|u: f64| ((lam - 1.0) * u.ln()).exp() / (u + a), 0.0, 1.0, &spec)?;
    Ok(((C::new(1.0, 0.0) - lam) * a.ln()).exp() * r.value)
}

fn reciprocal1p() -> CatalogEntry {
    let f = AnalyticFunction::new(
        "reciprocal1p",
        Arc::new(|t| C::from(1.0 / (1.0 + t))),
        coeffs(|l| if l % 2 == 0 { 1.0 } else { -1.0 }),
        1.0,
    )
    .with_complex(Arc::new(|z: C| (z + 1.0).inv()))
    .with_tail(Tail::Decaying, 0.0)
    .with_mellin(MellinStar {
        eval: Arc::new(|lam, a| {
            let full = C::from(PI) / (lam * PI).sin();
            if a.is_infinite() {
                Ok(full)
            } else {
                Ok(full - reciprocal_tail(lam, a)?)
            }
        }),
        upper: MellinUpper::Any,
        singular_at: Arc::new(all_positive),
        valid_above: 0.0,
    });
    let ln3 = 3f64.ln();
    let known_fpi = vec![
        fx(2.0, 0, 0.5, ln3 - 2.0, 1e-12, Provenance::ClosedForm),
        fx(1.0, 0, 0.5, -ln3, 1e-12, Provenance::ClosedForm),
        fx(0.5, 0, f64::INFINITY, PI, 1e-9, Provenance::ClosedForm),
    ];
    // High-precision quadrature of \int_0^(1/2) ln^n t / (t^nu (0.1 + t)(1 + t)) dt.
    let oracle = [
        (0.0, 0, 1.540_327_067_910_989_6),
        (0.0, 1, -3.624_189_941_081_738_8),
        (0.0, 2, 11.095_058_392_217_446),
        (0.3, 0, 3.416_072_750_908_884_6),
        (0.3, 1, -10.324_172_104_632_534),
        (0.3, 2, 41.437_099_440_722_25),
        (0.5, 0, 6.715_484_645_389_825),
        (0.5, 1, -25.582_009_963_095_53),
        (0.5, 2, 132.453_160_565_630_36),
    ];
    let known_stieltjes = oracle.iter().map(|&(nu, n, v)| sx(nu, n, 0.5, 0.1, v, 1e-8, Provenance::Oracle)).collect();
    CatalogEntry { name: "reciprocal1p".into(), function: f, default_a: 0.5, known_fpi, known_stieltjes }
}

fn cos(b: f64) -> Result<CatalogEntry> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain(format!("cos frequency must be positive, got {b}")));
    }
    let name = if b == 1.0 { "cos".to_string() } else { format!("cos:{b}") };
    let f = AnalyticFunction::new(
        name.clone(),
        Arc::new(move |t| C::from((b * t).cos())),
        coeffs(|l| {
            if l % 2 == 1 {
                0.0
            } else {
                let sign = if (l / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sign * b.powi(l as i32) / factorial(l as u32)
            }
        }),
        f64::INFINITY,
    )
    .with_complex(Arc::new(move |z: C| (z * b).cos()))
    .with_parity(Parity::Even)
    .with_tail(Tail::Oscillatory { half_period: PI / b, phase: 0.5 }, 0.0)
    .with_mellin(MellinStar {
        eval: Arc::new(move |lam, _a| {
            let num = (lam * (PI / 2.0)).sin() * ((lam - 1.0) * b.ln()).exp() * PI;
            Ok(num / ((lam * PI).sin() * gamma(lam)?))
        }),
        upper: MellinUpper::Infinite,
        singular_at: Arc::new(all_positive),
        valid_above: 0.0,
    });
    let inf = f64::INFINITY;
    let lb = b.ln();
    let known_fpi = vec![
        fx(0.5, 0, inf, (PI / (2.0 * b)).sqrt(), 1e-8, Provenance::Literature),
        fx(1.0, 0, inf, -EULER_GAMMA - lb, 1e-7, Provenance::Literature),
        fx(2.0, 0, inf, -PI * b / 2.0, 1e-7, Provenance::Literature),
        // odd pole: (-1)^k b^(2k-2)/(2k-2)! [ln b - psi(2k-1)], k = 2
        fx(3.0, 0, inf, b * b / 2.0 * (lb - (1.5 - EULER_GAMMA)), 1e-7, Provenance::ClosedForm),
        // removable: (-1)^k pi b^(2k-1) / (2 (2k-1)!), k = 2
        fx(4.0, 0, inf, PI * b.powi(3) / 12.0, 1e-7, Provenance::ClosedForm),
    ];
    Ok(CatalogEntry { name, function: f, default_a: inf, known_fpi, known_stieltjes: Vec::new() })
}

fn j0_taylor(scale: f64) -> Vec<C> {
    coeffs(|l| {
        if l % 2 == 1 {
            0.0
        } else {
            let k = (l / 2) as u32;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let kf = factorial(k);
            scale * sign / (4f64.powi(k as i32) * kf * kf)
        }
    })
}

fn j0_mellin(lam: C) -> Result<C> {
    let one = C::new(1.0, 0.0);
    Ok((-lam * LN_2).exp() * gamma((one - lam) * 0.5)? / gamma((one + lam) * 0.5)?)
}

fn j0_like(name: &str, scale: f64, tail_phase: f64) -> AnalyticFunction {
    AnalyticFunction::new(name, Arc::new(move |t| C::from(scale * bessel_j0(t))), j0_taylor(scale), f64::INFINITY)
        .with_complex(Arc::new(move |z| j0_series(z) * scale))
        .with_parity(Parity::Even)
        .with_tail(Tail::Oscillatory { half_period: PI, phase: tail_phase }, -0.5)
        .with_mellin(MellinStar {
            eval: Arc::new(move |lam, _a| Ok(j0_mellin(lam)? * scale)),
            upper: MellinUpper::Infinite,
            singular_at: Arc::new(odd),
            valid_above: -0.5,
        })
}

fn j0() -> CatalogEntry {
    let f = j0_like("j0", 1.0, 0.75);
    let inf = f64::INFINITY;
    let half = (j0_mellin(C::from(0.5)).unwrap()).re;
    let known_fpi = vec![
        fx(0.5, 0, inf, half, 1e-8, Provenance::ClosedForm),
        fx(2.0, 0, inf, -1.0, 1e-8, Provenance::ClosedForm),
        fx(4.0, 0, inf, 1.0 / 9.0, 1e-8, Provenance::ClosedForm),
    ];
    CatalogEntry { name: "j0".into(), function: f, default_a: inf, known_fpi, known_stieltjes: Vec::new() }
}

fn y0_k1() -> CatalogEntry {
    let f = j0_like("y0_k1", FRAC_2_PI, 0.75);
    CatalogEntry { name: "y0_k1".into(), function: f, default_a: f64::INFINITY, known_fpi: Vec::new(), known_stieltjes: Vec::new() }
}

/// Taylor coefficients of Y0(t) - (2/pi) J0(t) ln t.
fn y0_k0_taylor() -> Vec<C> {
    coeffs(|l| {
        if l % 2 == 1 {
            return 0.0;
        }
        let k = (l / 2) as u32;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = factorial(k);
        let psi = digamma(C::from(k as f64 + 1.0)).unwrap().re;
        -FRAC_2_PI * sign * (LN_2 + psi) / (4f64.powi(k as i32) * kf * kf)
    })
}

fn y0_k0_eval(t: f64, series: &[C]) -> f64 {
    if t.abs() <= 8.0 {
        series.iter().rev().fold(0.0, |acc, c| acc * t + c.re)
    } else {
        bessel_y0(t) - FRAC_2_PI * bessel_j0(t) * t.ln()
    }
}

fn y0_k0() -> CatalogEntry {
    let series = y0_k0_taylor();
    let s1 = series.clone();
    let s2 = series.clone();
    let f = AnalyticFunction::new("y0_k0", Arc::new(move |t| C::from(y0_k0_eval(t, &s1))), series, f64::INFINITY)
        .with_complex(Arc::new(move |z: C| s2.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * z + c)))
        .with_parity(Parity::Even)
        .with_tail(Tail::Oscillatory { half_period: PI, phase: 0.25 }, -0.5)
        .with_mellin(MellinStar {
            // M*[Y0] + d/dlambda M*[k1]
            eval: Arc::new(|lam, _a| {
                let one = C::new(1.0, 0.0);
                let m1 = j0_mellin(lam)? * FRAC_2_PI;
                let dlog = -LN_2 - (digamma((one - lam) * 0.5)? + digamma((one + lam) * 0.5)?) * 0.5;
                Ok(y0_mellin(lam)? + m1 * dlog)
            }),
            upper: MellinUpper::Infinite,
            singular_at: Arc::new(odd),
            valid_above: -0.5,
        });
    CatalogEntry { name: "y0_k0".into(), function: f, default_a: f64::INFINITY, known_fpi: Vec::new(), known_stieltjes: Vec::new() }
}

fn exp_neg() -> CatalogEntry {
    let f = AnalyticFunction::new(
        "exp_neg",
        Arc::new(|t: f64| C::from((-t).exp())),
        coeffs(|l| if l % 2 == 0 { 1.0 } else { -1.0 } / factorial(l as u32)),
        f64::INFINITY,
    )
    .with_complex(Arc::new(|z: C| (-z).exp()))
    .with_tail(Tail::Decaying, f64::NEG_INFINITY)
    .with_mellin(MellinStar {
        eval: Arc::new(|lam, _a| gamma(C::new(1.0, 0.0) - lam)),
        upper: MellinUpper::Infinite,
        singular_at: Arc::new(all_positive),
        valid_above: f64::NEG_INFINITY,
    });
    let inf = f64::INFINITY;
    let known_fpi = vec![
        fx(0.5, 0, inf, PI.sqrt(), 1e-9, Provenance::ClosedForm),
        fx(1.0, 0, inf, -EULER_GAMMA, 1e-9, Provenance::ClosedForm),
        fx(2.0, 0, inf, EULER_GAMMA - 1.0, 1e-9, Provenance::ClosedForm),
    ];
    CatalogEntry { name: "exp_neg".into(), function: f, default_a: inf, known_fpi, known_stieltjes: Vec::new() }
}

/// The pair (k0, k1) with Y0(t) = k0(t) + k1(t) ln t.
pub fn y0_pair() -> (AnalyticFunction, AnalyticFunction) {
    (y0_k0().function, y0_k1().function)
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }
}

/// Consistency checks on an entry: Taylor data against the evaluator,
/// declared radius of convergence, Mellin continuation against direct
/// quadrature inside the strip, and parity.
pub fn validate_entry(entry: &CatalogEntry) -> ValidationReport {
    let k = &entry.function;
    let mut rep = ValidationReport::default();

    // Taylor series against the evaluator well inside the disk.
    let tmax = (0.25 * k.rho0).min(1.0);
    let worst = (1..=8)
        .map(|i| {
            let t = tmax * i as f64 / 8.0;
            let v = k.at(t);
            (k.taylor_sum(C::from(t)) - v).norm() / v.norm().max(1.0)
        })
        .fold(0.0, f64::max);
    rep.push("taylor_vs_eval", worst < 1e-10, format!("max relative deviation {worst:.2e} on (0, {tmax}]"));

    // Root test on two windows of the Taylor tail: a finite radius shows up
    // as a plateau, an entire function as steady growth.
    let len = k.taylor0.len();
    let lo = root_test_radius(&k.taylor0, len / 2, 3 * len / 4);
    let hi = root_test_radius(&k.taylor0, 3 * len / 4, len);
    let growth = hi / lo;
    let (ok, detail) = if k.rho0.is_infinite() {
        (!hi.is_finite() || growth > 1.2, format!("declared entire, root test {lo:.3} then {hi:.3}"))
    } else if hi.is_infinite() {
        (false, format!("declared {}, but the Taylor data terminates", k.rho0))
    } else {
        let ok = (hi / k.rho0 - 1.0).abs() < 0.15 && growth < 1.1;
        let flag = if hi < k.rho0 { "series diverges inside the declared radius" } else { "radius underestimated" };
        (ok, format!("declared {}, root test {hi:.3}{}", k.rho0, if ok { String::new() } else { format!(": {flag}") }))
    };
    rep.push("rho0", ok, detail);

    // Mellin continuation inside the strip.
    if let Some(m) = &k.mellin {
        let a = if m.upper == MellinUpper::Infinite { f64::INFINITY } else { entry.default_a };
        let lo = if a.is_infinite() { k.strip_left.max(m.valid_above).max(-1.5) } else { m.valid_above.max(-1.5) };
        let mut worst = 0.0f64;
        let mut failure = None;
        for i in 1..=5 {
            let lam = C::from(lo + (1.0 - lo) * i as f64 / 6.0);
            match (mellin_star_eval(k, lam, a), fpi(k, lam, 0, a)) {
                (Ok(x), Ok(y)) => worst = worst.max((x - y.value).norm() / y.value.norm().max(1.0)),
                (Err(e), _) | (_, Err(e)) => failure = Some(e.to_string()),
            }
        }
        match failure {
            Some(e) => rep.push("mellin_vs_quadrature", false, e),
            None => rep.push("mellin_vs_quadrature", worst < 1e-9, format!("max relative deviation {worst:.2e}")),
        }
    }

    // Parity on the complex evaluator.
    if k.parity != Parity::None {
        let sign = if k.parity == Parity::Even { 1.0 } else { -1.0 };
        let worst = [0.1, 0.3, 0.7]
            .iter()
            .filter_map(|&t| {
                let z = C::new(t, 0.2 * t);
                let p = k.at_complex(z).ok()?;
                let q = k.at_complex(-z).ok()?;
                Some((p - q * sign).norm() / p.norm().max(1.0))
            })
            .fold(0.0, f64::max);
        rep.push("parity", worst < 1e-12, format!("max deviation {worst:.2e}"));
    }
    rep
}

// Mean of |a_l|^(-1/l) over the nonzero coefficients with l in [from, to).
fn root_test_radius(c: &[C], from: usize, to: usize) -> f64 {
    let vals: Vec<f64> = c[from..to.min(c.len())]
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(i, a)| a.norm().powf(-1.0 / (from + i) as f64))
        .collect();
    if vals.is_empty() {
        return f64::INFINITY;
    }
    vals.iter().sum::<f64>() / vals.len() as f64
}
