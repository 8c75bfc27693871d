//! Special functions and the quadrature rules everything else is built on.

mod bessel;
mod circle;
mod gamma;
mod hypergeom;
mod quad;
mod zeta;

pub use bessel::{bessel_j0, bessel_y0, j0_series};
pub use circle::{circle_coefficients, integrate_circle, CircleCoefficients, CircleIntegral, MAX_NODES, MIN_NODES};
pub use gamma::{binomial, digamma, factorial, gamma, gamma_real, pochhammer, polygamma, EULER_GAMMA};
pub use hypergeom::hyp1f2_unit;
pub use quad::{integrate_oscillatory, integrate_real, EndpointMode, Estimate, QuadratureSpec};
pub use zeta::{bernoulli, zeta_int};
