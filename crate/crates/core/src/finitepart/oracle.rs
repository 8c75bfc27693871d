use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;

use super::{check_upper, epsilon_corrections, kernel_integral, positive_integer, AnalyticFunction};
use crate::error::{Error, Result};
use crate::specfun::QuadratureSpec;

pub const DEFAULT_EPS_SCHEDULE: [f64; 8] = [
    0.125,
    0.0625,
    0.031_25,
    0.015_625,
    0.007_812_5,
    0.003_906_25,
    0.001_953_125,
    0.000_976_562_5,
];

#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub value: C,
    pub error: f64,
}

/// Finite part by brute force: integrate over [eps, a] for each eps of the
/// schedule, subtract the divergent terms, and extrapolate eps -> 0 over the
/// known vanishing powers eps^(l - lambda + 1) ln^j eps.
pub fn fpi_canonical_oracle(k: &AnalyticFunction, lambda: C, n: u32, a: f64, eps_schedule: &[f64]) -> Result<OracleResult> {
    check_upper(k, lambda, a)?;
    let emax = eps_schedule.iter().cloned().fold(0.0, f64::max);
    if eps_schedule.len() < 3 || !(emax < a.min(k.rho0)) || eps_schedule.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::Domain("eps schedule must hold >= 3 values in (0, min(a, rho0))".into()));
    }
    let spec = QuadratureSpec { abs_tol: 1e-16, rel_tol: 1e-15, ..QuadratureSpec::default() };
    // \int_emax^a is shared by every schedule entry.
    let shared = kernel_integral(k, lambda, n, emax, a, &spec)?;
    let mut residual = Vec::with_capacity(eps_schedule.len());
    let mut noise = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        let head = if eps < emax { kernel_integral(k, lambda, n, eps, emax, &spec)? } else { Default::default() };
        let corr = epsilon_corrections(k, lambda, n, eps)?;
        residual.push(head.value + shared.value + corr.divergent);
        // Cancellation against the divergent group sets the noise level.
        let cancel = spec.rel_tol * (head.value.norm() + shared.value.norm() + corr.scale);
        noise.push(head.error + shared.error + cancel);
    }
    // First vanishing exponent: smallest l with Re(l + 1 - lambda) > 0,
    // skipping the logarithmic index at integers.
    let mut l0 = (lambda.re - 1.0).floor().max(-1.0) as i64 + 1;
    if let Some(m) = positive_integer(lambda) {
        l0 = l0.max(m);
    }
    // Only powers carried by a nonzero Taylor coefficient can appear.
    let exps: Vec<C> = (l0..k.taylor0.len() as i64)
        .filter(|&l| k.coeff(l as usize).norm() > 0.0)
        .take(16)
        .map(|l| C::from(l as f64 + 1.0) - lambda)
        .collect();
    let npts = eps_schedule.len();
    let per = n as usize + 1;
    let kmax = ((npts - 1) / per).min(exps.len());
    let fit = |kterms: usize| extrapolate(eps_schedule, &residual, &noise, &exps[..kterms], n);
    let (best, sd) = fit(kmax)?;
    // With every nonzero power in the model the fit is exact up to noise;
    // otherwise the truncated model is compared against one term fewer.
    let complete = kmax == exps.len() && exps.len() < 16;
    let drift = if complete || kmax == 0 { 0.0 } else { (best - fit(kmax - 1)?.0).norm() };
    let amplification = 10.0;
    Ok(OracleResult { value: best, error: drift + amplification * sd })
}

// Weighted least-squares fit of value + sum c_{l,j} eps^s_l ln^j eps.
// Rows are scaled by 1/noise; returns the value and its standard error.
fn extrapolate(eps: &[f64], r: &[C], noise: &[f64], exps: &[C], n: u32) -> Result<(C, f64)> {
    let per = n as usize + 1;
    let cols = 1 + exps.len() * per;
    let rows = eps.len();
    let mut basis = DMatrix::<C>::zeros(rows, cols);
    for (i, &e) in eps.iter().enumerate() {
        let le = e.ln();
        let w = 1.0 / noise[i].max(f64::MIN_POSITIVE);
        basis[(i, 0)] = C::new(w, 0.0);
        for (li, s) in exps.iter().enumerate() {
            let es = (s * le).exp();
            for j in 0..per {
                basis[(i, 1 + li * per + j)] = es * le.powi(j as i32) * w;
            }
        }
    }
    // Column equilibration.
    let mut scales = vec![1.0; cols];
    for c in 0..cols {
        let m = (0..rows).map(|i| basis[(i, c)].norm()).fold(0.0, f64::max);
        if m > 0.0 {
            scales[c] = m;
            for i in 0..rows {
                basis[(i, c)] /= m;
            }
        }
    }
    let rhs = DVector::<C>::from_iterator(rows, r.iter().zip(noise).map(|(v, e)| v / e.max(f64::MIN_POSITIVE)));
    let svd = basis.svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-14)
        .map_err(|_| Error::NonConvergence { what: "extrapolation solve", estimate: f64::NAN })?;
    let vt = svd.v_t.as_ref().expect("svd computed with V");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let var: f64 = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1e-14 * smax)
        .map(|(j, &s)| vt[(j, 0)].norm_sqr() / (s * s))
        .sum();
    Ok((sol[0] / scales[0], var.sqrt() / scales[0]))
}
