use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::zeta::bernoulli;
use crate::error::{Error, Result};

// Godfrey's coefficients, g = 607/128.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_88e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

fn near_nonpositive_integer(z: C) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Complex gamma function.
pub fn gamma(z: C) -> Result<C> {
    if near_nonpositive_integer(z) {
        return Err(Error::Pole { func: "gamma", at: z });
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        if s.norm() == 0.0 {
            return Err(Error::Pole { func: "gamma", at: z });
        }
        return Ok(C::from(PI) / (s * gamma_right(C::new(1.0, 0.0) - z)));
    }
    Ok(gamma_right(z))
}

fn gamma_right(z: C) -> C {
    let mut ser = C::from(LANCZOS[0]);
    for (j, c) in LANCZOS.iter().enumerate().skip(1) {
        ser += *c / (z + j as f64);
    }
    let tmp = z + LANCZOS_G + 0.5;
    ((z + 0.5) * tmp.ln() - tmp).exp() * SQRT_2PI * ser / z
}

/// Real gamma function, a thin wrapper for the common case.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(C::from(x)).map(|g| g.re)
}

/// Polygamma function of order `l`; `l = 0` is the digamma function.
pub fn polygamma(l: u32, z: C) -> Result<C> {
    if near_nonpositive_integer(z) {
        return Err(Error::Pole { func: "polygamma", at: z });
    }
    // Shift to Re z >= SHIFT with the recurrence, then use the asymptotic series.
    const SHIFT: f64 = 25.0;
    let lf = factorial(l);
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^(l+1)
    let mut acc = C::new(0.0, 0.0);
    let mut w = z;
    while w.re < SHIFT {
        if w.norm() == 0.0 {
            return Err(Error::Pole { func: "polygamma", at: z });
        }
        // psi^(l)(w) = psi^(l)(w+1) + (-1)^(l+1) l! / w^(l+1)
        acc += sign * lf / w.powi(l as i32 + 1);
        w += 1.0;
    }
    Ok(acc + polygamma_asymptotic(l, w))
}

fn polygamma_asymptotic(l: u32, w: C) -> C {
    let inv = w.inv();
    let inv2 = inv * inv;
    if l == 0 {
        let mut s = w.ln() - inv * 0.5;
        let mut p = inv2;
        for k in 1..=20u32 {
            let term = p * (bernoulli(2 * k).unwrap() / (2 * k) as f64);
            s -= term;
            if term.norm() < 1e-18 * s.norm() {
                break;
            }
            p *= inv2;
        }
        return s;
    }
    // (-1)^(l+1) [ (l-1)!/w^l + l!/(2 w^(l+1)) + sum_k B_2k (2k+l-1)!/(2k)! / w^(2k+l) ]
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
    let wl = inv.powi(l as i32);
    let mut s = wl * factorial(l - 1) + wl * inv * (factorial(l) * 0.5);
    let mut p = wl * inv2;
    // ratio (2k+l-1)!/(2k)! updated incrementally
    let mut ratio = factorial(l + 1) / 2.0;
    for k in 1..=30u32 {
        let term = p * (bernoulli(2 * k).unwrap() * ratio);
        s += term;
        if term.norm() < 1e-18 * s.norm() {
            break;
        }
        let kk = (2 * k) as f64;
        ratio *= (kk + l as f64) * (kk + l as f64 + 1.0) / ((kk + 1.0) * (kk + 2.0));
        p *= inv2;
    }
    s * sign
}

pub fn digamma(z: C) -> Result<C> {
    polygamma(0, z)
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Pochhammer symbol (x)_k.
pub fn pochhammer(x: C, k: u32) -> C {
    (0..k).fold(C::new(1.0, 0.0), |acc, j| acc * (x + j as f64))
}

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
