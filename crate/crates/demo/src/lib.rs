//! Browser demo: three operations exported through wasm-bindgen. Each
//! returns a flat `Vec<f64>` (a Float64Array on the JS side) or an error
//! string. The same functions run natively, which is how they are tested.

use fpint::catalog;
use fpint::expr::Expr;
use fpint::finitepart::fpi;
use fpint::laurent::reglim;
use fpint::stieltjes::{asymptotic_sweep, StieltjesOptions};
use fpint::Complex as C;
use wasm_bindgen::prelude::*;

const MAX_POINTS: u32 = 2000;

fn upper(a: f64) -> f64 {
    // JS callers pass 0 or a negative number for an infinite upper limit.
    if a > 0.0 {
        a
    } else {
        f64::INFINITY
    }
}

/// Finite part of \int_0^a k(t) ln^n t t^-lambda dt along a lambda grid.
/// Returns (lambda, re, im) triples; poles of the continuation do not
/// occur since the finite part is defined at every real lambda.
#[wasm_bindgen]
pub fn fpi_curve(kernel: &str, n: u32, a: f64, lambda_min: f64, lambda_max: f64, points: u32) -> Result<Vec<f64>, String> {
    if !(points >= 2 && points <= MAX_POINTS) {
        return Err(format!("points must lie in [2, {MAX_POINTS}]"));
    }
    if !(lambda_max > lambda_min) {
        return Err("lambda_max must exceed lambda_min".into());
    }
    let k = catalog::get(kernel).map_err(|e| e.to_string())?.function;
    let a = upper(a);
    let mut out = Vec::with_capacity(3 * points as usize);
    for i in 0..points {
        let lam = lambda_min + (lambda_max - lambda_min) * i as f64 / (points - 1) as f64;
        let v = fpi(&k, C::from(lam), n, a).map_err(|e| format!("lambda = {lam}: {e}"))?.value;
        out.extend([lam, v.re, v.im]);
    }
    Ok(out)
}

/// Regularized limit of an expression in z at z0, sampled on a circle of
/// the given radius. Returns [re, im, error estimate, nodes].
#[wasm_bindgen]
pub fn reglim_expr(expr: &str, z0_re: f64, z0_im: f64, radius: f64) -> Result<Vec<f64>, String> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err("radius must be positive".into());
    }
    let e = Expr::parse(expr).map_err(|e| e.to_string())?;
    let r = reglim(|z| e.eval(z), C::new(z0_re, z0_im), radius).map_err(|e| e.to_string())?;
    Ok(vec![r.value.re, r.value.im, r.error, r.nodes as f64])
}

/// Ratio of the exact Stieltjes transform to its leading small-omega term
/// for omega = 10^-1 down to 10^-decades, `per_decade` points per decade.
/// Returns (omega, ratio) pairs.
#[wasm_bindgen]
pub fn asymptotic_ratio(kernel: &str, nu: f64, n: u32, a: f64, decades: u32, per_decade: u32) -> Result<Vec<f64>, String> {
    if !(1..=12).contains(&decades) || !(1..=20).contains(&per_decade) {
        return Err("decades must lie in [1, 12] and per_decade in [1, 20]".into());
    }
    let k = catalog::get(kernel).map_err(|e| e.to_string())?.function;
    let steps = (decades - 1) * per_decade + 1;
    let omegas: Vec<f64> = (0..steps).map(|i| 10f64.powf(-1.0 - i as f64 / per_decade as f64)).collect();
    let rows = asymptotic_sweep(&k, C::from(nu), n, upper(a), &omegas, &StieltjesOptions::default()).map_err(|e| e.to_string())?;
    Ok(rows.iter().flat_map(|r| [r.omega, r.ratio.re]).collect())
}

/// Catalog names, comma separated, for the kernel picker.
#[wasm_bindgen]
pub fn kernels() -> String {
    catalog::NAMES.join(",")
}
