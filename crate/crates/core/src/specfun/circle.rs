use std::f64::consts::TAU;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};

pub const MIN_NODES: usize = 64;
pub const MAX_NODES: usize = 4096;

#[derive(Clone, Debug)]
pub struct CircleCoefficients {
    /// Coefficients a_k for k = k_min..=k_max.
    pub coeffs: Vec<C>,
    pub k_min: i32,
    /// Accuracy of the coefficients in units of a_0; coefficient k carries
    /// an absolute noise of `noise_floor * radius^-k`.
    pub noise_floor: f64,
    pub nodes: usize,
}

/// Trapezoid estimate of a_k = (1/2 pi i) \oint f / (z - c)^(k+1) dz on
/// |z - c| = r for k in [k_min, k_max], doubling the node count from
/// 64 up to 4096 until consecutive estimates agree.
pub fn circle_coefficients<F>(f: F, center: C, radius: f64, k_min: i32, k_max: i32) -> Result<CircleCoefficients>
where
    F: Fn(C) -> Result<C>,
{
    if !(radius > 0.0 && radius.is_finite()) || k_max < k_min {
        return Err(Error::Domain(format!("bad circle: radius {radius}, k in [{k_min}, {k_max}]")));
    }
    let mut samples: Vec<C> = Vec::with_capacity(MAX_NODES);
    let mut n = MIN_NODES;
    let sample = |j: usize, n: usize| -> Result<C> {
        let z = center + C::from_polar(radius, TAU * j as f64 / n as f64);
        let v = f(z).map_err(|_| Error::SingularityOnCircle { center, radius })?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularityOnCircle { center, radius });
        }
        Ok(v)
    };
    for j in 0..n {
        samples.push(sample(j, n)?);
    }
    let mut prev = dft(&samples, radius, k_min, k_max);
    loop {
        // Interleave the new odd nodes.
        let n2 = 2 * n;
        let mut next = Vec::with_capacity(n2);
        for (j, s) in samples.iter().enumerate() {
            next.push(*s);
            next.push(sample(2 * j + 1, n2)?);
        }
        samples = next;
        n = n2;
        let cur = dft(&samples, radius, k_min, k_max);
        let scale = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let diff = cur
            .iter()
            .zip(&prev)
            .enumerate()
            .map(|(i, (a, b))| (a - b).norm() * radius.powi(k_min + i as i32))
            .fold(0.0, f64::max);
        let roundoff = 1e-16 * scale * (n as f64).sqrt();
        if diff <= 1e-13 * scale.max(1e-300) {
            let noise_floor = diff.max(roundoff);
            return Ok(CircleCoefficients { coeffs: cur, k_min, noise_floor, nodes: n });
        }
        if n >= MAX_NODES {
            return Err(Error::SingularityOnCircle { center, radius });
        }
        prev = cur;
    }
}

fn dft(samples: &[C], radius: f64, k_min: i32, k_max: i32) -> Vec<C> {
    let n = samples.len();
    (k_min..=k_max)
        .map(|k| {
            let mut acc = C::new(0.0, 0.0);
            for (j, s) in samples.iter().enumerate() {
                // exp(-i k theta_j), with k*j reduced mod n to keep the angle small
                let m = ((k as i64 * j as i64).rem_euclid(n as i64)) as f64;
                acc += s * C::from_polar(1.0, -TAU * m / n as f64);
            }
            acc / n as f64 * radius.powi(-k)
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct CircleIntegral {
    pub value: C,
    pub error: f64,
    pub nodes: usize,
}

/// (1/2 pi i) \oint f(z) dz over |z - center| = radius.
pub fn integrate_circle<F>(f: F, center: C, radius: f64) -> Result<CircleIntegral>
where
    F: Fn(C) -> Result<C>,
{
    let c = circle_coefficients(f, center, radius, -1, -1)?;
    Ok(CircleIntegral { value: c.coeffs[0], error: c.noise_floor * radius, nodes: c.nodes })
}
