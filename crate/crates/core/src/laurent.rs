//! Regularized limits through Laurent coefficients on a circle, and the
//! generalized L'Hospital rule for quotients with a zero of order n.

use nalgebra::DMatrix;
use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::specfun::{circle_coefficients, integrate_circle};

pub const DEFAULT_M_PROBE: u32 = 6;

#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    pub center: C,
    pub radius: f64,
    pub k_min: i32,
    pub coeffs: Vec<C>,
    /// Coefficient k is trusted to `noise_floor * radius^-k`.
    pub noise_floor: f64,
    pub nodes: usize,
}

impl LaurentExpansion {
    pub fn k_max(&self) -> i32 {
        self.k_min + self.coeffs.len() as i32 - 1
    }

    /// a_k, or zero outside the computed range.
    pub fn coeff(&self, k: i32) -> C {
        if k < self.k_min || k > self.k_max() {
            return C::new(0.0, 0.0);
        }
        self.coeffs[(k - self.k_min) as usize]
    }

    pub fn noise(&self, k: i32) -> f64 {
        self.noise_floor * self.radius.powi(-k)
    }

    pub fn principal_part(&self, z: C) -> C {
        let h = z - self.center;
        (self.k_min..0).map(|k| self.coeff(k) * h.powi(k)).sum()
    }

    pub fn regular_part(&self, z: C) -> C {
        let h = z - self.center;
        (0.max(self.k_min)..=self.k_max()).map(|k| self.coeff(k) * h.powi(k)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityClass {
    RegularOrRemovable,
    Pole(u32),
    EssentialSuspected,
}

/// Laurent coefficients a_k, k in [k_min, k_max], of `f` about `center` for
/// the annulus containing the circle of the given radius. Coefficients
/// below the noise floor come back as exact zeros.
pub fn laurent_coeffs<F>(f: F, center: C, radius: f64, k_min: i32, k_max: i32) -> Result<LaurentExpansion>
where
    F: Fn(C) -> Result<C>,
{
    let c = circle_coefficients(f, center, radius, k_min, k_max)?;
    let coeffs = c
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let k = k_min + i as i32;
            if a.norm() <= c.noise_floor * radius.powi(-k) {
                C::new(0.0, 0.0)
            } else {
                *a
            }
        })
        .collect();
    Ok(LaurentExpansion { center, radius, k_min, coeffs, noise_floor: c.noise_floor, nodes: c.nodes })
}

/// Taylor coefficients f^(k)(center)/k!, k = 0..=k_max, of a function
/// holomorphic in the disk.
pub fn taylor_coeffs<F>(f: F, center: C, radius: f64, k_max: usize) -> Result<Vec<C>>
where
    F: Fn(C) -> Result<C>,
{
    Ok(laurent_coeffs(f, center, radius, 0, k_max as i32)?.coeffs)
}

/// Classifies the singularity at the expansion center from the principal
/// part; the expansion must cover k >= -m_probe.
pub fn classify(exp: &LaurentExpansion, m_probe: u32) -> SingularityClass {
    let significant = |k: i32| {
        let thresh = 1e-8f64.max(1e3 * exp.noise(k));
        exp.coeff(k).norm() > thresh
    };
    let m_probe = m_probe as i32;
    if significant(-m_probe) {
        return SingularityClass::EssentialSuspected;
    }
    match (1..m_probe).rev().find(|&m| significant(-m)) {
        Some(m) => SingularityClass::Pole(m as u32),
        None => SingularityClass::RegularOrRemovable,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RegLim {
    pub value: C,
    pub error: f64,
    pub nodes: usize,
}

/// Regularized limit: the constant Laurent coefficient
/// a_0 = (1/2 pi i) \oint f(z)/(z - z0) dz on |z - z0| = radius.
///
/// The result is the a_0 of whichever annulus the circle lies in; the
/// caller is responsible for a radius inside the punctured disk of
/// holomorphy.
pub fn reglim<F>(f: F, z0: C, radius: f64) -> Result<RegLim>
where
    F: Fn(C) -> Result<C>,
{
    let r = integrate_circle(|z| Ok(f(z)? / (z - z0)), z0, radius)?;
    Ok(RegLim { value: r.value, error: r.error, nodes: r.nodes })
}

/// Coefficients c_k of the quotient sum a_k h^k / sum b_k h^k, using the
/// determinant formula, cross-checked against long division.
pub fn series_quotient(a: &[C], b: &[C], k: usize) -> Result<Vec<C>> {
    if a.len() <= k || b.len() <= k {
        return Err(Error::Domain(format!("need at least {} coefficients", k + 1)));
    }
    let b0 = b[0];
    if b0.norm() == 0.0 {
        return Err(Error::Domain("leading denominator coefficient vanishes".into()));
    }
    let mut long = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut s = a[j];
        for (i, c) in long.iter().enumerate() {
            s -= *c * b[j - i];
        }
        long.push(s / b0);
    }
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let c = quotient_det(a, b, j);
        let d = long[j];
        let scale = 1.0f64.max(d.norm());
        if (c - d).norm() > 1e-12 * scale {
            return Err(Error::CrossCheck { what: "series quotient", a: c, b: d });
        }
        out.push(c);
    }
    Ok(out)
}

// c_k = det M / b0^(k+1), M lower-triangular Toeplitz in b with the last
// column replaced by a_0..a_k.
fn quotient_det(a: &[C], b: &[C], k: usize) -> C {
    let n = k + 1;
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == k {
            a[i]
        } else if i >= j {
            b[i - j]
        } else {
            C::new(0.0, 0.0)
        }
    });
    m.determinant() / b[0].powi(n as i32)
}

/// Regularized limit of f/g at a point where g has a zero of exact order n,
/// from the Taylor coefficients f_k = f^(k)/k! and g_k = g^(k)/k! there.
pub fn reglim_rational(f: &[C], g: &[C], n: usize) -> Result<C> {
    if f.len() <= n || g.len() <= 2 * n {
        return Err(Error::Domain(format!("order {n} needs {} coefficients of f and {} of g", n + 1, 2 * n + 1)));
    }
    let gn = g[n].norm();
    if gn == 0.0 {
        return Err(Error::OrderMismatch { expected: n, detail: "g^(n) vanishes".into() });
    }
    let scale = g[..=2 * n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    if let Some(j) = (0..n).find(|&j| g[j].norm() > 1e-10 * scale) {
        return Err(Error::OrderMismatch { expected: n, detail: format!("g^({j}) does not vanish") });
    }
    let c = series_quotient(f, &g[n..], n)?;
    Ok(c[n])
}

/// Closed form at a simple zero of g (real derivatives).
pub fn reglim_simple(f: C, f1: C, g1: C, g2: C) -> C {
    f1 / g1 - f * g2 / (g1 * g1 * 2.0)
}

/// Closed form at a double zero of g (real derivatives).
pub fn reglim_double(f: C, f1: C, f2: C, g2: C, g3: C, g4: C) -> C {
    f2 / g2 - f1 * g3 * (2.0 / 3.0) / (g2 * g2) + f * (g3 * g3 * 4.0 - g2 * g4 * 3.0) / (g2 * g2 * g2 * 18.0)
}

#[derive(Clone, Copy, Debug)]
pub struct LhospitalCheck {
    /// g^(n+1), ..., g^(2n) all vanish at the point.
    pub derivatives_vanish: bool,
    pub reglim: C,
    pub lhospital: C,
    pub agrees: bool,
}

/// Compares the regularized limit of f/g with the plain L'Hospital quotient
/// f^(n)/g^(n), both from Taylor coefficients sampled on a circle.
pub fn reglim_lhospital_reduction_check<F, G>(f: F, g: G, z0: C, n: usize, radius: f64) -> Result<LhospitalCheck>
where
    F: Fn(C) -> Result<C>,
    G: Fn(C) -> Result<C>,
{
    let fc = taylor_coeffs(f, z0, radius, 2 * n + 2)?;
    let gc = taylor_coeffs(g, z0, radius, 2 * n + 2)?;
    let reglim = reglim_rational(&fc, &gc, n)?;
    let lhospital = fc[n] / gc[n];
    let scale = gc[n].norm();
    let derivatives_vanish = (n + 1..=2 * n).all(|j| gc[j].norm() <= 1e-9 * scale);
    let agrees = (reglim - lhospital).norm() <= 1e-9 * 1f64.max(lhospital.norm());
    Ok(LhospitalCheck { derivatives_vanish, reglim, lhospital, agrees })
}
