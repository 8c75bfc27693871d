use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> C + Send + Sync>;
pub type ComplexFn = Arc<dyn Fn(C) -> C + Send + Sync>;
/// Continuation of M*_a[k; 1 - lambda] as a function of (lambda, a).
pub type MellinFn = Arc<dyn Fn(C, f64) -> Result<C> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// How the integrand behaves on an unbounded interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    /// Only finite upper limits are supported.
    Unsupported,
    /// Decays without oscillating.
    Decaying,
    /// Zeros asymptotically at `(k + phase) * half_period`.
    Oscillatory { half_period: f64, phase: f64 },
}

/// Which upper limits the Mellin continuation was derived for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MellinUpper {
    Finite,
    Infinite,
    Any,
}

#[derive(Clone)]
pub struct MellinStar {
    pub eval: MellinFn,
    pub upper: MellinUpper,
    /// Positive integers where the closed form cannot be evaluated directly
    /// (poles, or removable 0/0 points).
    pub singular_at: Arc<dyn Fn(i64) -> bool + Send + Sync>,
    /// The continuation is valid for Re lambda above this abscissa.
    pub valid_above: f64,
}

/// A kernel k(t), holomorphic near the origin, with everything the
/// finite-part and Stieltjes machinery needs to know about it.
#[derive(Clone)]
pub struct AnalyticFunction {
    pub name: String,
    pub eval: RealFn,
    pub eval_complex: Option<ComplexFn>,
    /// k^(l)(0)/l!
    pub taylor0: Vec<C>,
    /// Radius of convergence of the Taylor series (infinite for entire k).
    pub rho0: f64,
    /// Left edge d of the Mellin strip d < Re lambda < 1 when a = inf.
    pub strip_left: f64,
    pub mellin: Option<MellinStar>,
    pub parity: Parity,
    pub tail: Tail,
}

impl fmt::Debug for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("name", &self.name)
            .field("rho0", &self.rho0)
            .field("strip_left", &self.strip_left)
            .field("parity", &self.parity)
            .field("tail", &self.tail)
            .field("taylor_len", &self.taylor0.len())
            .finish()
    }
}

impl AnalyticFunction {
    pub fn new(name: impl Into<String>, eval: RealFn, taylor0: Vec<C>, rho0: f64) -> Self {
        AnalyticFunction {
            name: name.into(),
            eval,
            eval_complex: None,
            taylor0,
            rho0,
            strip_left: f64::NEG_INFINITY,
            mellin: None,
            parity: Parity::None,
            tail: Tail::Unsupported,
        }
    }

    /// Builds a kernel from its Taylor series alone; evaluation sums the
    /// series, so it is only usable well inside the disk of convergence.
    pub fn from_taylor(name: impl Into<String>, taylor0: Vec<C>, rho0: f64) -> Self {
        let c1 = taylor0.clone();
        let c2 = taylor0.clone();
        let mut k = AnalyticFunction::new(name, Arc::new(move |t| horner(&c1, C::from(t))), taylor0, rho0);
        k.eval_complex = Some(Arc::new(move |z| horner(&c2, z)));
        k
    }

    pub fn with_complex(mut self, f: ComplexFn) -> Self {
        self.eval_complex = Some(f);
        self
    }

    pub fn with_mellin(mut self, m: MellinStar) -> Self {
        self.mellin = Some(m);
        self
    }

    pub fn with_parity(mut self, p: Parity) -> Self {
        self.parity = p;
        self
    }

    pub fn with_tail(mut self, tail: Tail, strip_left: f64) -> Self {
        self.tail = tail;
        self.strip_left = strip_left;
        self
    }

    pub fn at(&self, t: f64) -> C {
        (self.eval)(t)
    }

    /// k(z) for complex z: the analytic evaluator if present, otherwise the
    /// Taylor series inside its disk.
    pub fn at_complex(&self, z: C) -> Result<C> {
        if let Some(f) = &self.eval_complex {
            return Ok(f(z));
        }
        if z.norm() < 0.9 * self.rho0 {
            return Ok(self.taylor_sum(z));
        }
        Err(Error::MissingCapability { func: self.name.clone(), capability: "complex evaluation" })
    }

    pub fn taylor_sum(&self, z: C) -> C {
        horner(&self.taylor0, z)
    }

    pub fn coeff(&self, l: usize) -> C {
        self.taylor0.get(l).copied().unwrap_or_default()
    }

    pub fn value_at_zero(&self) -> C {
        self.coeff(0)
    }

    /// Order of the zero of k at the origin, if k vanishes there.
    pub fn zero_order(&self) -> Result<usize> {
        let scale = self.taylor0.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.taylor0
            .iter()
            .position(|c| c.norm() > 1e-14 * scale)
            .ok_or_else(|| Error::Domain(format!("{}: Taylor series vanishes identically", self.name)))
    }

    /// g(t) = k(t) / t^m for a zero of order m at the origin.
    pub fn divide_by_power(&self, m: usize) -> AnalyticFunction {
        if m == 0 {
            return self.clone();
        }
        let taylor: Vec<C> = self.taylor0.iter().skip(m).copied().collect();
        let near = 0.25 * self.rho0.min(1.0);
        let k = self.clone();
        let tk = taylor.clone();
        let eval: RealFn = Arc::new(move |t| {
            if t.abs() < near {
                horner(&tk, C::from(t))
            } else {
                k.at(t) / t.powi(m as i32)
            }
        });
        let mut g = AnalyticFunction::new(format!("{}/t^{}", self.name, m), eval, taylor.clone(), self.rho0);
        if let Some(kc) = self.eval_complex.clone() {
            let tk = taylor;
            g.eval_complex = Some(Arc::new(move |z: C| {
                if z.norm() < near {
                    horner(&tk, z)
                } else {
                    kc(z) / z.powi(m as i32)
                }
            }));
        }
        g.parity = match (self.parity, m % 2) {
            (Parity::None, _) => Parity::None,
            (p, 0) => p,
            (Parity::Even, _) => Parity::Odd,
            (Parity::Odd, _) => Parity::Even,
        };
        g.tail = self.tail;
        g.strip_left = self.strip_left - m as f64;
        if let Some(ms) = &self.mellin {
            let inner = ms.eval.clone();
            let sing = ms.singular_at.clone();
            let shift = m as f64;
            g.mellin = Some(MellinStar {
                eval: Arc::new(move |lam, a| inner(lam + shift, a)),
                upper: ms.upper,
                singular_at: Arc::new(move |j| sing(j + m as i64)),
                valid_above: ms.valid_above - shift,
            });
        }
        g
    }
}

pub(crate) fn horner(c: &[C], z: C) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, a| acc * z + a)
}
