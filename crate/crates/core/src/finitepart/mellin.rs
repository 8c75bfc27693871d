use num_complex::Complex64 as C;

use super::{positive_integer, AnalyticFunction, FpiMethod, FpiResult, MellinStar, MellinUpper};
use crate::error::{Error, Result};
use crate::laurent::{laurent_coeffs, reglim};
use crate::specfun::factorial;

const POLE_RADIUS: f64 = 0.25;

fn mellin_of<'a>(k: &'a AnalyticFunction, a: f64) -> Result<&'a MellinStar> {
    let m = k
        .mellin
        .as_ref()
        .ok_or_else(|| Error::MissingCapability { func: k.name.clone(), capability: "a Mellin continuation" })?;
    let ok = match m.upper {
        MellinUpper::Infinite => a.is_infinite(),
        MellinUpper::Finite => a.is_finite(),
        MellinUpper::Any => true,
    };
    if !ok {
        return Err(Error::MissingCapability { func: k.name.clone(), capability: "a Mellin continuation for this upper limit" });
    }
    Ok(m)
}

/// Continued Mellin transform M*_a[k; 1 - lambda], through its regularized
/// limit at declared singular integers.
pub fn mellin_star_eval(k: &AnalyticFunction, lambda: C, a: f64) -> Result<C> {
    Ok(mellin_star_point(k, lambda, a)?.0)
}

fn mellin_star_point(k: &AnalyticFunction, lambda: C, a: f64) -> Result<(C, FpiMethod, f64)> {
    let m = mellin_of(k, a)?;
    if lambda.re <= m.valid_above {
        return Err(Error::Domain(format!("continuation of {} valid for Re lambda > {}", k.name, m.valid_above)));
    }
    match positive_integer(lambda) {
        Some(j) if (m.singular_at)(j) => {
            if lambda.re - POLE_RADIUS <= m.valid_above {
                return Err(Error::Domain("circle leaves the continuation's domain".into()));
            }
            let f = m.eval.clone();
            let r = reglim(move |z| f(z, a), lambda, POLE_RADIUS)?;
            Ok((r.value, FpiMethod::MellinStarReglim, r.error))
        }
        _ => Ok(((m.eval)(lambda, a)?, FpiMethod::MellinStarRegular, 0.0)),
    }
}

/// (-1)^n d^n/dlambda^n of the continuation at non-integer lambda, by
/// Cauchy differentiation.
pub fn fpi_log_derivative_route(k: &AnalyticFunction, lambda: C, n: u32, a: f64) -> Result<C> {
    if positive_integer(lambda).is_some() {
        return Err(Error::Domain("log-derivative route needs non-integer lambda".into()));
    }
    Ok(coefficient_route(k, lambda, n, a)?.0)
}

// (-1)^n n! times the n-th Laurent coefficient of M* at lambda. At a regular
// point that is the n-th derivative; at an integer it is the regularized
// limit of the n-th derivative.
fn coefficient_route(k: &AnalyticFunction, lambda: C, n: u32, a: f64) -> Result<(C, f64)> {
    let m = mellin_of(k, a)?;
    let radius = match positive_integer(lambda) {
        Some(_) => POLE_RADIUS,
        None => {
            let nearest = lambda.re.round().max(1.0);
            let dist = C::new(lambda.re - nearest, lambda.im).norm();
            POLE_RADIUS.min(0.5 * dist)
        }
    };
    let radius = radius.min(0.5 * (lambda.re - m.valid_above));
    if !(radius > 1e-6) {
        return Err(Error::Domain(format!("lambda = {lambda} too close to a singularity or the domain edge")));
    }
    let f = m.eval.clone();
    let exp = laurent_coeffs(move |z| f(z, a), lambda, radius, n as i32, n as i32)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let scale = sign * factorial(n);
    Ok((exp.coeff(n as i32) * scale, exp.noise(n as i32) * factorial(n)))
}

/// Finite part through the Mellin continuation, any n.
pub fn fpi_mellin(k: &AnalyticFunction, lambda: C, n: u32, a: f64) -> Result<FpiResult> {
    let (value, method, err) = if n == 0 {
        mellin_star_point(k, lambda, a)?
    } else {
        let (v, e) = coefficient_route(k, lambda, n, a)?;
        let method = if positive_integer(lambda).is_some() { FpiMethod::MellinStarReglim } else { FpiMethod::MellinStarRegular };
        (v, method, e)
    };
    Ok(FpiResult::direct(value, method, err))
}
