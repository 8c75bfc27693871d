//! Stieltjes transforms \int_0^a k(t) ln^n t / (t^nu (omega + t)) dt for
//! |omega| below min(a, rho0): a convergent series in omega whose
//! coefficients are finite parts, plus a closed-form term carrying the
//! non-analytic dependence on omega.

mod singular;
mod y0;

use std::f64::consts::PI;

use num_complex::Complex64 as C;

pub use singular::{
    csc_derivative, csc_derivative_combinatorial, csc_derivative_polygamma, delta_n, delta_n_combinatorial, delta_n_polygamma,
    delta_n_zero, MAX_CSC_ORDER,
};
pub use y0::{y0_finite_part_odd, y0_mellin, y0_series_sum, y0_singular_term, y0_stieltjes};

use crate::error::{Error, Result};
use crate::finitepart::{default_eps, finite_then_tail, fpi_with, reduce_zero_at_origin, AnalyticFunction, FpiOptions, Parity};
use crate::specfun::{integrate_real, EndpointMode, Estimate, QuadratureSpec};

#[derive(Clone, Copy, Debug)]
pub struct StieltjesOptions {
    pub tol: f64,
    pub j_max: usize,
}

impl Default for StieltjesOptions {
    fn default() -> Self {
        StieltjesOptions { tol: 1e-14, j_max: 200 }
    }
}

#[derive(Clone, Debug)]
pub struct StieltjesResult {
    pub total: C,
    pub series_sum: C,
    pub singular_term: C,
    /// (-1)^j omega^j fp(k ln^n, j + nu + 1), as summed.
    pub terms: Vec<C>,
    pub j_used: usize,
    pub tail_est: f64,
    /// The series hit j_max before meeting the stopping rule.
    pub truncated: bool,
    /// Contribution of the zero-at-origin reduction, if one was applied.
    pub prefactor: C,
}

fn check_nu(nu: C) -> Result<()> {
    if nu.im == 0.0 && nu.re != 0.0 && nu.re == nu.re.round() {
        return Err(Error::Domain(format!("nu = {} must not be a nonzero integer", nu.re)));
    }
    Ok(())
}

fn radius_limit(k: &AnalyticFunction, a: f64) -> f64 {
    a.min(k.rho0)
}

/// omega^-nu csc(pi nu) type singular factor; multiply by k(-omega).
pub fn singular_factor(nu: C, n: u32, omega: C) -> Result<C> {
    if nu == C::new(0.0, 0.0) {
        return delta_n_zero(omega, n);
    }
    if n == 0 {
        let x = nu * PI;
        return Ok((-nu * omega.ln()).exp() * PI / x.sin());
    }
    delta_n(nu, omega, n)
}

pub fn stieltjes_eval(k: &AnalyticFunction, nu: C, n: u32, omega: C, a: f64) -> Result<StieltjesResult> {
    stieltjes_eval_with(k, nu, n, omega, a, &StieltjesOptions::default())
}

pub fn stieltjes_eval_with(
    k: &AnalyticFunction,
    nu: C,
    n: u32,
    omega: C,
    a: f64,
    opts: &StieltjesOptions,
) -> Result<StieltjesResult> {
    check_nu(nu)?;
    let limit = radius_limit(k, a);
    if !(omega.norm() > 0.0 && omega.norm() < limit) {
        return Err(Error::RadiusViolation { omega: omega.norm(), limit });
    }
    if k.value_at_zero().norm() == 0.0 {
        let red = reduce_zero_at_origin(k, nu, n, omega, a)?;
        let mut inner = stieltjes_eval_with(&red.reduced, nu, n, omega, a, opts)?;
        let pre = red.prefactor();
        inner.total = pre + red.remainder_factor * inner.total;
        inner.series_sum = pre + red.remainder_factor * inner.series_sum;
        inner.singular_term *= red.remainder_factor;
        inner.terms.iter_mut().for_each(|t| *t *= red.remainder_factor);
        inner.prefactor = pre;
        return Ok(inner);
    }
    let series = series_part(k, nu, n, omega, a, opts)?;
    let singular_term = k.at_complex(-omega)? * singular_factor(nu, n, omega)?;
    Ok(StieltjesResult {
        total: series.sum + singular_term,
        series_sum: series.sum,
        singular_term,
        terms: series.terms,
        j_used: series.j_used,
        tail_est: series.tail,
        truncated: series.truncated,
        prefactor: C::new(0.0, 0.0),
    })
}

struct Series {
    sum: C,
    terms: Vec<C>,
    j_used: usize,
    tail: f64,
    truncated: bool,
}

fn series_part(k: &AnalyticFunction, nu: C, n: u32, omega: C, a: f64, opts: &StieltjesOptions) -> Result<Series> {
    let limit = radius_limit(k, a);
    let w = omega.norm();
    // Splitting point comfortably above |omega| so the cancellation inside
    // each finite part stays below the decay of omega^j.
    let mut eps = default_eps(k, a);
    if w > 0.6 * eps {
        eps = if limit.is_finite() { 0.5 * (w + limit) } else { 2.0 * w };
    }
    let fopts = FpiOptions { eps: Some(eps), ..FpiOptions::default() };
    let q_geom = if limit.is_finite() { w / limit } else { 0.0 };
    let mut terms = Vec::new();
    let mut sum = C::new(0.0, 0.0);
    let mut small_run = 0;
    let mut pw = C::new(1.0, 0.0);
    for j in 0..opts.j_max {
        let lambda = nu + (j as f64 + 1.0);
        let fp = fpi_with(k, lambda, n, a, &fopts)?;
        let term = pw * fp.value;
        pw *= -omega;
        terms.push(term);
        sum += term;
        let tn = term.norm();
        let scale = sum.norm().max(1e-300);
        if tn <= opts.tol * scale {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 {
            let q_obs = observed_ratio(&terms);
            let q = q_geom.max(q_obs).min(0.99);
            let recent = terms.iter().rev().take(3).map(|t| t.norm()).fold(0.0, f64::max);
            let tail = recent * q / (1.0 - q);
            if tail <= opts.tol * scale {
                return Ok(Series { sum, j_used: j + 1, terms, tail, truncated: false });
            }
        }
    }
    let recent = terms.iter().rev().take(3).map(|t| t.norm()).fold(0.0, f64::max);
    Ok(Series { sum, j_used: opts.j_max, terms, tail: recent, truncated: true })
}

// Ratio of successive term magnitudes over the last few nonzero terms.
fn observed_ratio(terms: &[C]) -> f64 {
    let mags: Vec<f64> = terms.iter().rev().take(6).map(|t| t.norm()).filter(|m| *m > 0.0).collect();
    if mags.len() < 3 {
        return 0.0;
    }
    // Geometric mean ratio between the newest and oldest of the window.
    let span = (mags.len() - 1) as f64;
    (mags[0] / mags[mags.len() - 1]).powf(1.0 / span)
}

/// The Stieltjes integral by direct quadrature, omega > 0 real.
pub fn stieltjes_direct_oracle(k: &AnalyticFunction, nu: f64, n: u32, omega: f64, a: f64) -> Result<Estimate> {
    if !(omega > 0.0) {
        return Err(Error::Domain("direct oracle needs omega > 0".into()));
    }
    let f = |t: f64| {
        let lt = t.ln();
        k.at(t) * (lt.powi(n as i32) * (-nu * lt).exp() / (omega + t))
    };
    let spec = QuadratureSpec { abs_tol: 1e-16, rel_tol: 1e-14, ..QuadratureSpec::default() };
    let first = omega.min(a);
    let mut total = integrate_real(f, 0.0, first, &spec.with_mode(EndpointMode::SingularLeft))?;
    // Geometric panels resolve the scale omega next to the origin.
    let mut lo = first;
    let stop = a.min(1.0f64.max(omega));
    while lo < stop {
        let hi = (2.0 * lo).min(stop);
        total = total + integrate_real(f, lo, hi, &spec)?;
        lo = hi;
    }
    if a > lo {
        total = total + finite_then_tail(k, &f, lo, a, &spec)?;
    }
    Ok(total)
}

/// k(0) times the singular factor: the leading small-omega behaviour.
pub fn asymptotic_leading(k: &AnalyticFunction, nu: C, n: u32, omega: C) -> Result<C> {
    Ok(k.value_at_zero() * singular_factor(nu, n, omega)?)
}

#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub omega: f64,
    pub exact_total: C,
    pub leading_term: C,
    pub ratio: C,
    pub series_sum: C,
    pub singular_term: C,
}

pub fn asymptotic_sweep(k: &AnalyticFunction, nu: C, n: u32, a: f64, omegas: &[f64], opts: &StieltjesOptions) -> Result<Vec<SweepRow>> {
    omegas
        .iter()
        .map(|&w| {
            let r = stieltjes_eval_with(k, nu, n, C::from(w), a, opts)?;
            let lead = asymptotic_leading(k, nu, n, C::from(w))?;
            Ok(SweepRow {
                omega: w,
                exact_total: r.total,
                leading_term: lead,
                ratio: r.total / lead,
                series_sum: r.series_sum,
                singular_term: r.singular_term,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct LinearLogResult {
    pub total: C,
    pub series_sum: C,
    pub singular_term: C,
    /// Singular term from the parity shortcut when k0 and k1 share a parity.
    pub singular_parity: Option<C>,
}

/// Stieltjes transform of h(t) = k0(t) + k1(t) ln t.
pub fn linear_log_combo(k0: &AnalyticFunction, k1: &AnalyticFunction, nu: C, omega: C, a: f64) -> Result<LinearLogResult> {
    let opts = StieltjesOptions::default();
    let s0 = stieltjes_eval_with(k0, nu, 0, omega, a, &opts)?;
    let s1 = stieltjes_eval_with(k1, nu, 1, omega, a, &opts)?;
    let k0m = k0.at_complex(-omega)?;
    let k1m = k1.at_complex(-omega)?;
    let lw = omega.ln();
    let pi2 = PI * PI;
    let is_zero = nu == C::new(0.0, 0.0);
    let (singular, cot, pref) = if is_zero {
        (-k0m * lw - k1m * (lw * lw * 0.5 + pi2 / 6.0), C::new(0.0, 0.0), C::new(0.0, 0.0))
    } else {
        let x = nu * PI;
        let cot = x.cos() / x.sin();
        let pref = (-nu * lw).exp() * PI / x.sin();
        (pref * (k0m + k1m * lw + k1m * cot * PI), cot, pref)
    };
    let singular_parity = match (k0.parity, k1.parity) {
        (p0, p1) if p0 == p1 && p0 != Parity::None => {
            let sign = if p0 == Parity::Even { 1.0 } else { -1.0 };
            let k0w = k0.at_complex(omega)?;
            let k1w = k1.at_complex(omega)?;
            let g = k0w + k1w * lw;
            Some(if is_zero {
                (-g * lw + k1w * (lw * lw * 0.5 - pi2 / 6.0)) * sign
            } else {
                pref * (g + k1w * cot * PI) * sign
            })
        }
        _ => None,
    };
    let series_sum = s0.series_sum + s1.series_sum;
    Ok(LinearLogResult { total: series_sum + singular, series_sum, singular_term: singular, singular_parity })
}
