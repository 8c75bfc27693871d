use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C;

use super::{positive_integer, AnalyticFunction};
use crate::error::{Error, Result};
use crate::specfun::{integrate_real, QuadratureSpec};

/// Finite part as a keyhole contour integral (n = 0 or 1, finite a).
///
/// The contour runs in along the upper lip of the cut [r, a] (arg z = 0),
/// once around |z| = r, and back out along the lower lip (arg z = 2 pi);
/// log z uses arg in [0, 2 pi). The weight attached to z^-lambda removes
/// the divergence, so the result does not depend on r.
pub fn fpi_contour(k: &AnalyticFunction, lambda: C, n: u32, a: f64, r: Option<f64>) -> Result<C> {
    if !a.is_finite() {
        return Err(Error::Domain("contour route needs a finite upper limit".into()));
    }
    if n > 1 {
        return Err(Error::Domain("contour route covers n = 0 and n = 1".into()));
    }
    let limit = a.min(k.rho0);
    let r = r.unwrap_or(0.5 * limit);
    if !(r > 0.0 && r < limit) {
        return Err(Error::Domain(format!("contour radius {r} must lie in (0, {limit})")));
    }
    let kc = k
        .eval_complex
        .clone()
        .ok_or_else(|| Error::MissingCapability { func: k.name.clone(), capability: "complex evaluation" })?;
    let i = C::new(0.0, 1.0);
    let two_pi_i = i * TAU;
    // Polynomial weight in L = log z, and the overall factor.
    let (weight, factor): (Box<dyn Fn(C) -> C>, C) = match (positive_integer(lambda), n) {
        (None, 0) => {
            let e = (-lambda * two_pi_i).exp();
            (Box::new(|_l| C::new(1.0, 0.0)), (e - 1.0).inv())
        }
        (Some(_), 0) => (Box::new(move |l: C| l - i * PI), two_pi_i.inv()),
        (None, _) => {
            let e = (-lambda * two_pi_i).exp();
            let d = e - 1.0;
            let c0 = -two_pi_i * e / (d * d);
            (Box::new(move |l: C| l / d + c0), C::new(1.0, 0.0))
        }
        (Some(_), _) => (Box::new(move |l: C| l * l * 0.5 - i * PI * l - PI * PI / 3.0), two_pi_i.inv()),
    };
    let spec = QuadratureSpec { abs_tol: 1e-15, rel_tol: 1e-14, ..QuadratureSpec::default() };
    let body = |l: C| (-lambda * l).exp() * weight(l);
    // Lower lip outward minus upper lip outward.
    let lips = integrate_real(
        |t: f64| {
            let lu = C::from(t.ln());
            let ll = lu + two_pi_i;
            k.at(t) * (body(ll) - body(lu))
        },
        r,
        a,
        &spec,
    )?;
    let circle = integrate_real(
        |theta: f64| {
            let z = C::from_polar(r, theta);
            let l = C::new(r.ln(), theta);
            kc(z) * body(l) * i * z
        },
        0.0,
        TAU,
        &spec,
    )?;
    Ok((lips.value + circle.value) * factor)
}
