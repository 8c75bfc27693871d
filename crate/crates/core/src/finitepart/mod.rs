//! Hadamard finite parts of \int_0^a k(t) ln^n t / t^lambda dt.
//!
//! Several independent routes are provided so that each can check the
//! others: the epsilon representation (default), a Richardson-extrapolated
//! oracle, the Mellin continuation, and keyhole contour integrals.

mod contour;
mod function;
mod mellin;
mod oracle;

use num_complex::Complex64 as C;

pub use contour::fpi_contour;
pub use function::{AnalyticFunction, ComplexFn, MellinFn, MellinStar, MellinUpper, Parity, RealFn, Tail};
pub use mellin::{fpi_log_derivative_route, fpi_mellin, mellin_star_eval};
pub use oracle::{fpi_canonical_oracle, OracleResult, DEFAULT_EPS_SCHEDULE};

use crate::error::{Error, Result};
use crate::specfun::{factorial, integrate_oscillatory, integrate_real, EndpointMode, Estimate, QuadratureSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpiMethod {
    StripConvergent,
    EpsilonRepresentation,
    MellinStarRegular,
    MellinStarReglim,
    Contour,
}

impl FpiMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FpiMethod::StripConvergent => "strip_convergent",
            FpiMethod::EpsilonRepresentation => "epsilon_representation",
            FpiMethod::MellinStarRegular => "mellin_star_regular",
            FpiMethod::MellinStarReglim => "mellin_star_reglim",
            FpiMethod::Contour => "contour",
        }
    }
}

/// One term `coeff * eps^eps_power * ln^log_power eps` of the divergent
/// part of \int_eps^a.
#[derive(Clone, Copy, Debug)]
pub struct DivergentTerm {
    pub eps_power: C,
    pub log_power: u32,
    pub coeff: C,
}

impl DivergentTerm {
    pub fn eval(&self, eps: f64) -> C {
        let le = eps.ln();
        self.coeff * (self.eps_power * le).exp() * le.powi(self.log_power as i32)
    }
}

#[derive(Clone, Debug)]
pub struct FpiResult {
    pub value: C,
    pub method: FpiMethod,
    /// \int_eps^a minus its divergent part, at `eps_used`.
    pub c_eps: C,
    pub d_eps_terms: Vec<DivergentTerm>,
    pub eps_used: f64,
    pub err_est: f64,
}

impl FpiResult {
    fn direct(value: C, method: FpiMethod, err_est: f64) -> Self {
        FpiResult { value, method, c_eps: value, d_eps_terms: Vec::new(), eps_used: 0.0, err_est }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FpiOptions {
    /// Override for the splitting point of the epsilon representation.
    pub eps: Option<f64>,
    pub quad: QuadratureSpec,
}

impl Default for FpiOptions {
    fn default() -> Self {
        FpiOptions { eps: None, quad: QuadratureSpec::default() }
    }
}

/// lambda as a positive integer, if it is one.
pub fn positive_integer(lambda: C) -> Option<i64> {
    if lambda.im == 0.0 && lambda.re >= 1.0 && lambda.re == lambda.re.round() {
        Some(lambda.re as i64)
    } else {
        None
    }
}

const STRIP_DIRECT_MAX: f64 = 0.5;

pub fn fpi(k: &AnalyticFunction, lambda: C, n: u32, a: f64) -> Result<FpiResult> {
    fpi_with(k, lambda, n, a, &FpiOptions::default())
}

/// Finite part of \int_0^a k(t) ln^n t t^-lambda dt.
///
/// Re lambda <= 1/2 integrates directly; otherwise the epsilon
/// representation is used, with its logarithmic form at positive integers.
/// The representation is exact inside the strip as well, and there it
/// avoids quadrature of a barely integrable t^-lambda near 0.
pub fn fpi_with(k: &AnalyticFunction, lambda: C, n: u32, a: f64, opts: &FpiOptions) -> Result<FpiResult> {
    check_upper(k, lambda, a)?;
    if lambda.re <= STRIP_DIRECT_MAX {
        let est = kernel_integral(k, lambda, n, 0.0, a, &opts.quad)?;
        return Ok(FpiResult::direct(est.value, FpiMethod::StripConvergent, est.error));
    }
    let eps = match opts.eps {
        Some(e) => e,
        None => default_eps(k, a),
    };
    if !(eps > 0.0 && eps < a && eps < k.rho0) {
        return Err(Error::Domain(format!("eps = {eps} must lie in (0, min(a, rho0)) = (0, {})", a.min(k.rho0))));
    }
    let body = kernel_integral(k, lambda, n, eps, a, &opts.quad)?;
    let corr = epsilon_corrections(k, lambda, n, eps)?;
    let value = body.value + corr.divergent + corr.vanishing;
    let c_eps = body.value + corr.divergent;
    let roundoff = 1e-16 * (body.value.norm() + corr.scale);
    Ok(FpiResult {
        value,
        method: FpiMethod::EpsilonRepresentation,
        c_eps,
        d_eps_terms: corr.terms,
        eps_used: eps,
        err_est: body.error + corr.tail + roundoff,
    })
}

pub fn default_eps(k: &AnalyticFunction, a: f64) -> f64 {
    (0.5 * a.min(k.rho0)).min(0.5)
}

pub(crate) fn check_upper(k: &AnalyticFunction, lambda: C, a: f64) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("upper limit a = {a} must be positive")));
    }
    if a.is_infinite() {
        if k.tail == Tail::Unsupported {
            return Err(Error::MissingCapability { func: k.name.clone(), capability: "an infinite upper limit" });
        }
        if lambda.re <= k.strip_left {
            return Err(Error::Domain(format!(
                "\\int^inf of {} needs Re lambda > {}, got {}",
                k.name, k.strip_left, lambda.re
            )));
        }
    }
    Ok(())
}

pub(crate) struct Corrections {
    /// Terms that diverge (or oscillate) as eps -> 0, i.e. -D_eps.
    pub divergent: C,
    pub vanishing: C,
    pub terms: Vec<DivergentTerm>,
    pub tail: f64,
    pub scale: f64,
}

/// Sum over the Taylor coefficients of the antiderivative of
/// a_l t^(l - lambda) ln^n t evaluated at eps, with the sign that makes
/// \int_eps^a + sum independent of eps.
pub(crate) fn epsilon_corrections(k: &AnalyticFunction, lambda: C, n: u32, eps: f64) -> Result<Corrections> {
    let m = positive_integer(lambda);
    let le = eps.ln();
    let nf = factorial(n);
    let sign_n = if n % 2 == 0 { 1.0 } else { -1.0 };
    let r = if k.rho0.is_finite() { eps / k.rho0 } else { 0.5 };
    let ratio = r / (1.0 - r);
    let mut out = Corrections {
        divergent: C::new(0.0, 0.0),
        vanishing: C::new(0.0, 0.0),
        terms: Vec::new(),
        tail: f64::INFINITY,
        scale: 0.0,
    };
    let mut recent = [0.0f64; 4];
    let len = k.taylor0.len();
    for (l, &al) in k.taylor0.iter().enumerate() {
        let s = C::from(l as f64 + 1.0) - lambda;
        let divergent = s.re <= 0.0;
        let term = if al.norm() == 0.0 {
            C::new(0.0, 0.0)
        } else if m == Some(l as i64 + 1) {
            let t = al * le.powi(n as i32 + 1) / (n as f64 + 1.0);
            out.terms.push(DivergentTerm { eps_power: C::new(0.0, 0.0), log_power: n + 1, coeff: -al / (n as f64 + 1.0) });
            t
        } else {
            let eps_s = (s * le).exp();
            let mut inner = C::new(0.0, 0.0);
            for j in 0..=n {
                let cj = (if j % 2 == 0 { 1.0 } else { -1.0 }) / factorial(j) / s.powi((n - j + 1) as i32);
                inner += cj * le.powi(j as i32);
                if divergent {
                    out.terms.push(DivergentTerm { eps_power: s, log_power: j, coeff: -al * sign_n * nf * cj });
                }
            }
            al * sign_n * nf * eps_s * inner
        };
        let is_div = divergent || m == Some(l as i64 + 1);
        if is_div {
            out.divergent += term;
        } else {
            out.vanishing += term;
        }
        out.scale = out.scale.max(term.norm());
        recent[l % 4] = term.norm();
    }
    // Truncation at L terms: geometric bound from the last few terms.
    let bound = recent.iter().cloned().fold(0.0, f64::max) * ratio;
    let target = 1e-14 * out.scale.max(1.0);
    if bound > target {
        return Err(Error::InsufficientTaylor { available: len, tail: bound });
    }
    out.tail = bound;
    Ok(out)
}

/// Breakpoint separating the finite stretch from the tail when a = inf.
const TAIL_START: f64 = 2.0;

/// \int_lo^a k(t) t^-lambda ln^n t dt; lo = 0 is treated as an integrable
/// endpoint singularity.
pub(crate) fn kernel_integral(
    k: &AnalyticFunction,
    lambda: C,
    n: u32,
    lo: f64,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let f = |t: f64| -> C {
        let lt = t.ln();
        k.at(t) * (-lambda * lt).exp() * lt.powi(n as i32)
    };
    finite_then_tail(k, &f, lo, a, spec)
}

/// Integral of `f` (built on kernel `k`) over [lo, a], switching to tail
/// handling past TAIL_START when a = inf.
pub(crate) fn finite_then_tail<F: Fn(f64) -> C>(
    k: &AnalyticFunction,
    f: &F,
    lo: f64,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let smooth = spec.with_mode(EndpointMode::Smooth);
    let head_end = if a.is_finite() { a } else { TAIL_START.max(lo) };
    let mut total = Estimate::default();
    if lo == 0.0 {
        let cut = head_end.min(1.0);
        total = total + integrate_real(f, 0.0, cut, &spec.with_mode(EndpointMode::SingularLeft))?;
        if head_end > cut {
            total = total + integrate_real(f, cut, head_end, &smooth)?;
        }
    } else if head_end > lo {
        total = total + integrate_real(f, lo, head_end, &smooth)?;
    }
    if a.is_infinite() {
        let tail = match k.tail {
            Tail::Unsupported => {
                return Err(Error::MissingCapability { func: k.name.clone(), capability: "an infinite upper limit" })
            }
            Tail::Decaying => integrate_real(f, head_end, f64::INFINITY, &spec.with_mode(EndpointMode::SemiInfinite))?,
            Tail::Oscillatory { half_period, phase } => integrate_oscillatory(f, head_end, half_period, phase, spec)?,
        };
        total = total + tail;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct ZeroReduction {
    pub order: usize,
    /// k(t) / t^order.
    pub reduced: AnalyticFunction,
    /// (-1)^j omega^j \int_0^a t^(m-j-1-nu) ln^n t g(t) dt for j < m.
    pub terms: Vec<C>,
    /// (-1)^m omega^m, the factor in front of the Stieltjes transform of g.
    pub remainder_factor: C,
    pub err_est: f64,
}

impl ZeroReduction {
    pub fn prefactor(&self) -> C {
        self.terms.iter().sum()
    }
}

/// Splits the Stieltjes integrand of a kernel with a zero of order m at the
/// origin into m convergent integrals plus omega^m times the transform of
/// k / t^m.
pub fn reduce_zero_at_origin(k: &AnalyticFunction, nu: C, n: u32, omega: C, a: f64) -> Result<ZeroReduction> {
    let m = k.zero_order()?;
    if m == 0 {
        return Err(Error::Domain(format!("{} does not vanish at the origin", k.name)));
    }
    let g = k.divide_by_power(m);
    let mut terms = Vec::with_capacity(m);
    let mut err = 0.0;
    for j in 0..m {
        // exponent m - j - 1 - nu  <=>  lambda = j + 1 + nu - m, in the strip
        let lambda = nu + (j as f64 + 1.0 - m as f64);
        let r = fpi(&g, lambda, n, a)?;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(r.value * omega.powi(j as i32) * sign);
        err += r.err_est * omega.norm().powi(j as i32);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(ZeroReduction { order: m, reduced: g, terms, remainder_factor: omega.powi(m as i32) * sign, err_est: err })
}
