use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64 as C;

use super::gamma::EULER_GAMMA;

const SERIES_MAX: f64 = 8.0;
// Below this the Hankel expansion cannot reach double precision.
const ASYMPTOTIC_MIN: f64 = 25.0;

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_MAX {
        j0_series(C::from(ax)).re
    } else if ax < ASYMPTOTIC_MIN {
        miller(ax).0
    } else {
        hankel(ax).0
    }
}

/// Bessel function of the second kind, order zero, for x > 0.
pub fn bessel_y0(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    if x <= SERIES_MAX {
        let (j0, s) = series_parts(C::from(x));
        (2.0 / PI) * ((x / 2.0).ln() + EULER_GAMMA) * j0.re + (2.0 / PI) * s.re
    } else if x < ASYMPTOTIC_MIN {
        miller(x).1
    } else {
        hankel(x).1
    }
}

/// Power series of J0, valid for any complex argument of moderate size.
pub fn j0_series(z: C) -> C {
    series_parts(z).0
}

// Returns (J0(z), sum_k (-1)^(k+1) H_k (z/2)^(2k) / (k!)^2).
fn series_parts(z: C) -> (C, C) {
    let q = -(z * z) / 4.0;
    let mut term = C::new(1.0, 0.0);
    let mut j = term;
    let mut s = C::new(0.0, 0.0);
    let mut h = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        h += 1.0 / kf;
        j += term;
        // term carries (-1)^k; the Y0 sum wants (-1)^(k+1) H_k
        s -= term * h;
        if term.norm() * h.max(1.0) < 1e-17 * j.norm().max(1e-300) && k > 2 {
            break;
        }
    }
    (j, s)
}

// Miller's backward recurrence for J_{2k}, normalized with
// J0 + 2 sum J_{2k} = 1; Y0 from the Neumann series.
fn miller(x: f64) -> (f64, f64) {
    let mut n = (x + 40.0) as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let mut jp1 = 0.0;
    let mut jk = 1e-30;
    let mut norm = 0.0;
    let mut neumann = 0.0;
    let mut j0 = 0.0;
    for k in (1..=n).rev() {
        // J_{k-1} = (2k/x) J_k - J_{k+1}
        let jm1 = 2.0 * k as f64 / x * jk - jp1;
        jp1 = jk;
        jk = jm1;
        let idx = k - 1;
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * jk;
            let m = (idx / 2) as f64;
            let sign = if (idx / 2) % 2 == 0 { 1.0 } else { -1.0 };
            neumann += sign * jk / m;
        }
        if idx == 0 {
            j0 = jk;
        }
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            neumann *= 1e-250;
        }
    }
    norm += j0;
    let j0 = j0 / norm;
    let neumann = neumann / norm;
    let y0 = (2.0 / PI) * ((x / 2.0).ln() + EULER_GAMMA) * j0 - (4.0 / PI) * neumann;
    (j0, y0)
}

fn hankel(x: f64) -> (f64, f64) {
    // a_k = prod_{j=1..k} (2j-1)^2 / (k! 8^k)
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut xp = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let term = a / xp;
        if term > last {
            break;
        }
        last = term;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q -= sign * term;
        }
        if term < 1e-17 {
            break;
        }
        let kf = (k + 1) as f64;
        a *= (2.0 * kf - 1.0).powi(2) / (kf * 8.0);
        xp *= x;
    }
    let chi = x - FRAC_PI_4;
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}
