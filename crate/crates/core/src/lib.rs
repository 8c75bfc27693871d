//! Regularized limits, Hadamard finite-part integrals and Stieltjes
//! transforms with logarithmic kernels.
//!
//! * [`laurent`]: regularized limits from Laurent coefficients on a circle.
//! * [`finitepart`]: finite parts of \int_0^a k(t) ln^n t / t^lambda dt.
//! * [`stieltjes`]: \int_0^a k(t) ln^n t / (t^nu (omega + t)) dt as a
//!   convergent series of finite parts plus a closed-form singular term.
//! * [`catalog`]: ready-made kernels with reference values.

pub mod catalog;
pub mod error;
pub mod expr;
pub mod finitepart;
pub mod laurent;
pub mod specfun;
pub mod stieltjes;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;
