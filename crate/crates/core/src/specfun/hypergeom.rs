use num_complex::Complex64 as C;

use crate::error::{Error, Result};

/// 1F2(1; b1, b2; z) = sum_k z^k / ((b1)_k (b2)_k).
pub fn hyp1f2_unit(b1: C, b2: C, z: C) -> Result<C> {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..500 {
        let d = (b1 + k as f64) * (b2 + k as f64);
        if d.norm() == 0.0 {
            return Err(Error::Pole { func: "1F2", at: b1 });
        }
        term *= z / d;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && k > 2 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { what: "1F2 series", estimate: term.norm() })
}
