use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::specfun::{bernoulli, binomial, factorial, polygamma};

/// Largest derivative order the exact integer sums support.
pub const MAX_CSC_ORDER: u32 = 16;

/// d^l/dnu^l csc(pi nu) through the finite cot/csc expansion.
pub fn csc_derivative_combinatorial(l: u32, nu: C) -> Result<C> {
    if l > MAX_CSC_ORDER {
        return Err(Error::OutOfTable(format!("csc derivative of order {l}")));
    }
    let x = nu * PI;
    let sin = x.sin();
    if sin.norm() == 0.0 {
        return Err(Error::Pole { func: "csc", at: nu });
    }
    let csc = sin.inv();
    let cot = x.cos() * csc;
    let gamma = (l % 2) as i64;
    let mut total = C::new(0.0, 0.0);
    for k in 0..=l as i64 {
        // Exact integer: sum_m (-1)^m C(k,m) (2m+1)^l.
        let mut s: i128 = 0;
        for m in 0..=k {
            let b = binom_i128(k, m);
            let p = (2 * m + 1) as i128;
            let term = b * p.pow(l);
            s += if m % 2 == 0 { term } else { -term };
        }
        if s == 0 {
            continue;
        }
        let mut inner = C::new(0.0, 0.0);
        let pmax = (k - gamma).div_euclid(2);
        for p in 0..=pmax {
            let e = 2 * p + gamma;
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            inner += cot.powi(e as i32) * (sign * binomial(k as u32, e as u32));
        }
        total += inner * (s as f64) * 0.5f64.powi(k as i32);
    }
    let sign = if (l / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(total * csc * (sign * PI.powi(l as i32)))
}

fn binom_i128(n: i64, k: i64) -> i128 {
    let mut r: i128 = 1;
    for j in 0..k {
        r = r * (n - j) as i128 / (j + 1) as i128;
    }
    r
}

/// d^l/dnu^l csc(pi nu) through polygamma functions.
pub fn csc_derivative_polygamma(l: u32, nu: C) -> Result<C> {
    if nu.norm() == 0.0 {
        return Err(Error::Pole { func: "csc", at: nu });
    }
    let lf = factorial(l);
    let sign_l = if l % 2 == 0 { 1.0 } else { -1.0 };
    let scale = PI * 2f64.powi(l as i32 + 1);
    let a = polygamma(l, (nu + 1.0) * 0.5)? - polygamma(l, nu * 0.5)?;
    let b = polygamma(l, (-nu + 1.0) * 0.5)? - polygamma(l, -nu * 0.5)?;
    Ok(-sign_l * lf / (nu.powi(l as i32 + 1) * PI) + a / scale - b * sign_l / scale)
}

/// d^l/dnu^l csc(pi nu); both expansions are evaluated and must agree.
pub fn csc_derivative(l: u32, nu: C) -> Result<C> {
    let a = csc_derivative_combinatorial(l, nu)?;
    let b = csc_derivative_polygamma(l, nu)?;
    if (a - b).norm() > 1e-9 * a.norm().max(1.0) {
        return Err(Error::CrossCheck { what: "csc derivative routes", a, b });
    }
    Ok(a)
}

/// Singular term for nu != 0: (-1)^n pi d^n/dnu^n [omega^-nu csc(pi nu)],
/// i.e. pi omega^-nu sum_l (-1)^l C(n,l) Log^(n-l) omega D_l(nu).
pub fn delta_n(nu: C, omega: C, n: u32) -> Result<C> {
    delta_with(nu, omega, n, csc_derivative)
}

/// The same sum using only the polygamma expansion of D_l.
pub fn delta_n_polygamma(nu: C, omega: C, n: u32) -> Result<C> {
    delta_with(nu, omega, n, csc_derivative_polygamma)
}

/// The same sum using only the combinatorial expansion of D_l.
pub fn delta_n_combinatorial(nu: C, omega: C, n: u32) -> Result<C> {
    delta_with(nu, omega, n, csc_derivative_combinatorial)
}

fn delta_with(nu: C, omega: C, n: u32, d: fn(u32, C) -> Result<C>) -> Result<C> {
    if omega.norm() == 0.0 {
        return Err(Error::Domain("omega must be nonzero".into()));
    }
    let log_w = omega.ln();
    let mut sum = C::new(0.0, 0.0);
    for l in 0..=n {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sum += log_w.powi((n - l) as i32) * d(l, nu)? * (sign * binomial(n, l));
    }
    Ok((-nu * log_w).exp() * sum * PI)
}

/// Singular term for nu = 0:
/// -Log^(n+1) w/(n+1) + 2 n! sum_j (2^(2j-1)-1)(-1)^j pi^(2j) B_2j Log^(n-2j+1) w / ((n-2j+1)! (2j)!).
pub fn delta_n_zero(omega: C, n: u32) -> Result<C> {
    if omega.norm() == 0.0 {
        return Err(Error::Domain("omega must be nonzero".into()));
    }
    let lw = omega.ln();
    let mut s = -lw.powi(n as i32 + 1) / (n as f64 + 1.0);
    for j in 1..=n.div_ceil(2) {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = 2.0 * factorial(n) * (2f64.powi(2 * j as i32 - 1) - 1.0) * sign * PI.powi(2 * j as i32) * bernoulli(2 * j)?
            / (factorial(n + 1 - 2 * j) * factorial(2 * j));
        s += lw.powi((n + 1 - 2 * j) as i32) * c;
    }
    Ok(s)
}
