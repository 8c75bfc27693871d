use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{func} has a pole at {at}")]
    Pole { func: &'static str, at: Complex64 },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("{what} did not converge (error estimate {estimate:e})")]
    NonConvergence { what: &'static str, estimate: f64 },

    #[error("singularity suspected on or near the circle |z - {center}| = {radius}")]
    SingularityOnCircle { center: Complex64, radius: f64 },

    #[error("Taylor series too short: {available} coefficients leave a tail of {tail:e}")]
    InsufficientTaylor { available: usize, tail: f64 },

    #[error("denominator does not vanish to order {expected}: {detail}")]
    OrderMismatch { expected: usize, detail: String },

    #[error("internal cross-check failed in {what}: {a} vs {b}")]
    CrossCheck { what: &'static str, a: Complex64, b: Complex64 },

    #[error("|omega| = {omega} must be below {limit}")]
    RadiusViolation { omega: f64, limit: f64 },

    #[error("{0} is not tabulated")]
    OutOfTable(String),

    #[error("unknown catalog function `{0}`")]
    UnknownFunction(String),

    #[error("function `{func}` lacks {capability}")]
    MissingCapability { func: String, capability: &'static str },

    #[error("expression error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that reflect a numerical tolerance not being met rather than
    /// an invalid request.
    pub fn is_tolerance_failure(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::InsufficientTaylor { .. }
                | Error::CrossCheck { .. }
                | Error::SingularityOnCircle { .. }
        )
    }
}
