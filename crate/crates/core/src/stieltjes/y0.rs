//! Closed forms for the Stieltjes transform of Y0 on [0, inf).

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j0, bessel_y0, factorial, gamma, hyp1f2_unit, polygamma};

/// Continued Mellin transform M*[Y0; 1 - lambda] on (0, inf).
pub fn y0_mellin(lambda: C) -> Result<C> {
    let g = gamma((C::new(1.0, 0.0) - lambda) * 0.5)?;
    Ok(-(lambda * PI * 0.5).sin() * g * g / ((lambda * LN_2).exp() * PI))
}

/// Finite part of \int_0^inf Y0(t) t^-(2l+1) dt (double pole of the
/// continuation).
pub fn y0_finite_part_odd(l: u32) -> Result<f64> {
    let z = C::from(l as f64 + 1.0);
    let psi = polygamma(0, z)?.re;
    let psi1 = polygamma(1, z)?.re;
    let lf = factorial(l);
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    let bracket = PI * PI - 12.0 * LN_2 * LN_2 - 24.0 * LN_2 * psi - 12.0 * psi * psi + 6.0 * psi1;
    Ok(sign * bracket / (3.0 * PI * 4f64.powi(l as i32 + 1) * lf * lf))
}

/// sum_j (-1)^j omega^j fp(Y0, j + nu + 1), summed in closed form.
pub fn y0_series_sum(nu: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain("omega must be positive".into()));
    }
    if nu == 0.0 {
        // Only odd lambda = 2l + 1 contribute; even ones vanish.
        let mut s = 0.0;
        let w2 = omega * omega;
        let mut p = 1.0;
        for l in 0..200 {
            let t = p * y0_finite_part_odd(l)?;
            s += t;
            if t.abs() < 1e-17 * s.abs() && l > 2 {
                return Ok(s);
            }
            p *= w2;
        }
        return Err(Error::NonConvergence { what: "Y0 series", estimate: p });
    }
    if nu == nu.round() {
        return Err(Error::Domain(format!("nu = {nu} must not be a nonzero integer")));
    }
    let z = C::from(-omega * omega / 4.0);
    let h = nu / 2.0;
    let ge = gamma(C::from(-h))?.re;
    let go = gamma(C::from(-0.5 - h))?.re;
    let ce = (PI * h).cos() * ge * ge / (PI * 2f64.powf(nu + 1.0));
    let co = (PI * h).sin() * go * go / (PI * 2f64.powf(nu + 2.0));
    let fe = hyp1f2_unit(C::from(1.0 + h), C::from(1.0 + h), z)?.re;
    let fo = hyp1f2_unit(C::from(1.5 + h), C::from(1.5 + h), z)?.re;
    Ok(-ce * fe - omega * co * fo)
}

/// Singular term of the Y0 transform.
pub fn y0_singular_term(nu: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain("omega must be positive".into()));
    }
    let lw = omega.ln();
    let (j0, y0) = (bessel_j0(omega), bessel_y0(omega));
    if nu == 0.0 {
        return Ok(-y0 * lw + (2.0 / PI) * j0 * (0.5 * lw * lw - PI * PI / 6.0));
    }
    let x = PI * nu;
    Ok(PI / (omega.powf(nu) * x.sin()) * (y0 + 2.0 * j0 * x.cos() / x.sin()))
}

/// \int_0^inf Y0(t) / (t^nu (omega + t)) dt.
pub fn y0_stieltjes(nu: f64, omega: f64) -> Result<f64> {
    Ok(y0_series_sum(nu, omega)? + y0_singular_term(nu, omega)?)
}
