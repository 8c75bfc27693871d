//! Real-line quadrature: adaptive Gauss-Kronrod, tanh-sinh for endpoint
//! singularities, and accelerated sums for oscillatory tails.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointMode {
    /// Integrand is smooth on the closed interval.
    Smooth,
    /// Integrable algebraic or logarithmic singularity at the left endpoint.
    SingularLeft,
    /// Upper limit is +infinity and the integrand decays without oscillating.
    SemiInfinite,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub endpoint_mode: EndpointMode,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-15,
            rel_tol: 1e-13,
            max_subdivisions: 4000,
            endpoint_mode: EndpointMode::Smooth,
        }
    }
}

impl QuadratureSpec {
    pub fn with_mode(mut self, mode: EndpointMode) -> Self {
        self.endpoint_mode = mode;
        self
    }

    fn target(&self, value: C) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Estimate {
    pub value: C,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate { value: self.value + o.value, error: self.error + o.error }
    }
}

/// Integrates `f` over [a, b] according to `spec.endpoint_mode`.
pub fn integrate_real<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> C,
{
    match spec.endpoint_mode {
        EndpointMode::Smooth => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::Domain("smooth mode needs a finite interval".into()));
            }
            gauss_kronrod(&f, a, b, spec)
        }
        EndpointMode::SingularLeft => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::Domain("endpoint mode needs a finite interval".into()));
            }
            tanh_sinh(&f, a, b, spec)
        }
        EndpointMode::SemiInfinite => {
            if b != f64::INFINITY {
                return Err(Error::Domain("semi-infinite mode needs b = +inf".into()));
            }
            semi_infinite(&f, a, spec)
        }
    }
}

// QUADPACK 15-point Kronrod rule with embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> C>(f: &F, a: f64, b: f64) -> (C, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    (k, (k - g).norm())
}

fn gauss_kronrod<F: Fn(f64) -> C>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate::default());
    }
    let (v, e) = gk15(f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    loop {
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::NonConvergence { what: "Gauss-Kronrod (non-finite integrand)", estimate: f64::INFINITY });
        }
        // Roundoff floor: relative to the sum of absolute contributions.
        let floor = 1e-15 * parts.iter().map(|p| p.2.norm()).sum::<f64>();
        if err <= spec.target(total).max(floor) {
            return Ok(Estimate { value: total, error: err });
        }
        if parts.len() >= spec.max_subdivisions {
            return Err(Error::NonConvergence { what: "Gauss-Kronrod", estimate: err });
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (l, r, pv, pe) = parts.swap_remove(idx);
        let m = 0.5 * (l + r);
        if m <= l || m >= r {
            // Interval cannot be split further in double precision.
            return Ok(Estimate { value: total, error: err });
        }
        let (v1, e1) = gk15(f, l, m);
        let (v2, e2) = gk15(f, m, r);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        parts.push((l, m, v1, e1));
        parts.push((m, r, v2, e2));
        // Re-sum occasionally to avoid drift in the running totals.
        if parts.len() % 64 == 0 {
            total = parts.iter().map(|p| p.2).sum();
            err = parts.iter().map(|p| p.3).sum();
        }
    }
}

const TS_TMAX: f64 = 6.5;
const TS_MAX_LEVEL: u32 = 11;

// Tanh-sinh with nodes clustering at both ends; distances to the endpoints
// are formed directly so that points next to `a` are resolved.
fn tanh_sinh<F: Fn(f64) -> C>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    let len = b - a;
    if len == 0.0 {
        return Ok(Estimate::default());
    }
    let node = |t: f64| -> C {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let w = FRAC_PI_2 * t.cosh() * 2.0 * e / ((1.0 + e) * (1.0 + e)) * len;
        if w == 0.0 {
            return C::new(0.0, 0.0);
        }
        let near = len * e / (1.0 + e);
        let x = if u < 0.0 { a + near } else { b - near };
        if near == 0.0 || x <= a || x >= b {
            return C::new(0.0, 0.0);
        }
        let v = f(x);
        if v.norm() == 0.0 {
            return v;
        }
        v * w
    };
    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut t = h;
    while t <= TS_TMAX {
        sum += node(t) + node(-t);
        t += h;
    }
    let mut prev = sum * h;
    let mut prev_err = f64::INFINITY;
    for level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let mut t = h;
        while t <= TS_TMAX {
            sum += node(t) + node(-t);
            t += 2.0 * h;
        }
        let cur = sum * h;
        if !cur.re.is_finite() || !cur.im.is_finite() {
            return Err(Error::NonConvergence { what: "tanh-sinh (non-finite integrand)", estimate: f64::INFINITY });
        }
        let err = (cur - prev).norm();
        let floor = 4e-16 * cur.norm();
        if level >= 3 && (err <= spec.target(cur).max(floor) || (err <= floor * 64.0 && err >= prev_err)) {
            return Ok(Estimate { value: cur, error: err.max(floor) });
        }
        prev = cur;
        prev_err = err;
    }
    let err = prev_err;
    if err <= 1e3 * spec.target(prev) {
        return Ok(Estimate { value: prev, error: err });
    }
    Err(Error::NonConvergence { what: "tanh-sinh", estimate: err })
}

fn semi_infinite<F: Fn(f64) -> C>(f: &F, a: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if a <= 0.0 {
        let head = gauss_kronrod(f, a, 1.0, spec)?;
        return Ok(head + semi_infinite(f, 1.0, spec)?);
    }
    // t = a/u maps [a, inf) onto (0, 1].
    let g = |u: f64| -> C {
        if u < 1e-150 {
            return C::new(0.0, 0.0);
        }
        let v = f(a / u);
        if v.norm() == 0.0 {
            return v;
        }
        v * (a / u / u)
    };
    tanh_sinh(&g, 0.0, 1.0, spec)
}

/// Integral over [a, inf) of an oscillatory integrand with (asymptotic)
/// zero spacing `half_period` and zeros near `(k + phase) * half_period`.
///
/// The tail is split at those points and the alternating partial sums are
/// accelerated with repeated averaging.
pub fn integrate_oscillatory<F: Fn(f64) -> C>(
    f: F,
    a: f64,
    half_period: f64,
    phase: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let seg_spec = QuadratureSpec { endpoint_mode: EndpointMode::Smooth, ..*spec };
    let first = ((a / half_period - phase).floor() + 1.0 + phase) * half_period;
    let mut points = vec![a, first];
    let mut partial = Vec::new();
    let mut quad_err = 0.0;
    let mut running = C::new(0.0, 0.0);
    let mut last_est: Option<C> = None;
    const MAX_TERMS: usize = 1200;
    const AVG: usize = 30;
    while partial.len() < MAX_TERMS {
        let l = points[points.len() - 2];
        let r = points[points.len() - 1];
        let seg = gauss_kronrod(&f, l, r, &seg_spec)?;
        quad_err += seg.error;
        running += seg.value;
        partial.push(running);
        points.push(r + half_period);
        let k = partial.len();
        if k >= AVG + 8 && k % 8 == 0 {
            let est = binomial_average(&partial[k - AVG - 1..]);
            if let Some(prev) = last_est {
                let diff = (est - prev).norm();
                if diff <= spec.target(est) {
                    return Ok(Estimate { value: est, error: diff + quad_err });
                }
            }
            last_est = Some(est);
        }
    }
    Err(Error::NonConvergence {
        what: "oscillatory tail",
        estimate: last_est.map(|e| (e - running).norm()).unwrap_or(f64::INFINITY),
    })
}

// Repeated pairwise averaging of the last len-1 partial sums, i.e. a
// binomially weighted mean.
fn binomial_average(s: &[C]) -> C {
    let mut v: Vec<C> = s.to_vec();
    while v.len() > 1 {
        for i in 0..v.len() - 1 {
            v[i] = (v[i] + v[i + 1]) * 0.5;
        }
        v.pop();
    }
    v[0]
}
