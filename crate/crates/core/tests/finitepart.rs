use std::f64::consts::PI;
use std::sync::Arc;

use fpint::catalog;
use fpint::finitepart::*;
use fpint::laurent::reglim;
use fpint::specfun::{integrate_circle, integrate_real, EndpointMode, QuadratureSpec, EULER_GAMMA};
use fpint::{Complex as C, Error};
use proptest::prelude::*;

fn kernel(name: &str) -> AnalyticFunction {
    catalog::get(name).unwrap().function
}

#[test]
fn power_fixtures() {
    let one = kernel("one");
    for j in 1..=10 {
        let r = fpi(&one, C::from(j as f64 + 1.0), 0, 1.0).unwrap();
        assert!((r.value - C::from(-1.0 / j as f64)).norm() < 1e-12, "j = {j}");
        assert_eq!(r.method, FpiMethod::EpsilonRepresentation);
    }
    assert!(fpi(&one, C::from(1.0), 0, 1.0).unwrap().value.norm() < 1e-12);
    // \int_0^1 ln t / t^(1/2) dt = -4 converges: strip route.
    let r = fpi(&one, C::from(0.5), 1, 1.0).unwrap();
    assert!((r.value + 4.0).norm() < 1e-12);
}

#[test]
fn divergent_group_contains_only_powers_and_logs() {
    let k = kernel("reciprocal1p");
    let r = fpi(&k, C::from(2.5), 1, 0.5).unwrap();
    assert!(!r.d_eps_terms.is_empty());
    for t in &r.d_eps_terms {
        assert!(t.eps_power.re <= 0.0);
        assert!(t.log_power <= 2);
    }
    // Integer lambda carries the logarithmic term.
    let r = fpi(&k, C::from(2.0), 0, 0.5).unwrap();
    assert!(r.d_eps_terms.iter().any(|t| t.eps_power == C::new(0.0, 0.0) && t.log_power == 1));
}

#[test]
fn strip_consistency() {
    // Inside the strip the finite part is the ordinary integral.
    let k = kernel("reciprocal1p");
    let spec = QuadratureSpec { abs_tol: 1e-16, rel_tol: 1e-14, ..QuadratureSpec::default() }.with_mode(EndpointMode::SingularLeft);
    for lam in [-0.5, 0.25, 0.6, 0.9] {
        for n in 0..3u32 {
            let direct = integrate_real(
                |t: f64| C::from(t.ln().powi(n as i32) * t.powf(-lam) / (1.0 + t)),
                0.0,
                0.5,
                &spec,
            )
            .unwrap();
            let r = fpi(&k, C::from(lam), n, 0.5).unwrap();
            let tol = 1e-9 * direct.value.norm().max(1.0) + direct.error;
            assert!((r.value - direct.value).norm() < tol, "lambda {lam} n {n}: {} vs {}", r.value, direct.value);
        }
    }
}

#[test]
fn epsilon_independence() {
    for (name, a) in [("reciprocal1p", 0.5), ("cos", f64::INFINITY), ("one", 1.0), ("exp_neg", f64::INFINITY)] {
        let k = kernel(name);
        for lam in [1.0, 1.7, 3.0, 2.5] {
            for n in 0..3u32 {
                let e = default_eps(&k, a);
                let full = fpi_with(&k, C::from(lam), n, a, &FpiOptions { eps: Some(e), ..Default::default() }).unwrap();
                let half = fpi_with(&k, C::from(lam), n, a, &FpiOptions { eps: Some(0.5 * e), ..Default::default() }).unwrap();
                assert!((full.value - half.value).norm() < 1e-9, "{name} lambda {lam} n {n}");
            }
        }
    }
}

#[test]
fn complex_lambda() {
    // \int_0^1 t^-lambda: 1/(1 - lambda) continued.
    let one = kernel("one");
    let lam = C::new(2.3, 0.7);
    let r = fpi(&one, lam, 0, 1.0).unwrap();
    assert!((r.value - (C::from(1.0) - lam).inv()).norm() < 1e-12);
    let m = fpi_mellin(&kernel("exp_neg"), lam, 0, f64::INFINITY).unwrap();
    let e = fpi(&kernel("exp_neg"), lam, 0, f64::INFINITY).unwrap();
    assert!((m.value - e.value).norm() < 1e-10);
}

#[test]
fn cos_fixtures_by_every_route() {
    let cases = [
        (0.5, (PI / 2.0).sqrt(), 1e-8),
        (1.0, -EULER_GAMMA, 1e-7),
        (2.0, -PI / 2.0, 1e-7),
        (3.0, EULER_GAMMA / 2.0 - 0.75, 1e-7),
        (4.0, PI / 12.0, 1e-7),
    ];
    let k = kernel("cos");
    for (lam, want, tol) in cases {
        let l = C::from(lam);
        let eps = fpi(&k, l, 0, f64::INFINITY).unwrap().value;
        let mellin = fpi_mellin(&k, l, 0, f64::INFINITY).unwrap().value;
        let oracle = fpi_canonical_oracle(&k, l, 0, f64::INFINITY, &DEFAULT_EPS_SCHEDULE).unwrap();
        assert!((eps - want).norm() < tol, "eps route at {lam}");
        assert!((mellin - want).norm() < tol, "mellin route at {lam}");
        assert!((oracle.value - want).norm() <= oracle.error.max(1e-12), "oracle at {lam}");
    }
}

#[test]
fn cos_frequency_scaling() {
    // fp \int cos(b t) t^-lambda = b^(lambda - 1) fp \int cos t t^-lambda, plus a
    // log term at poles.
    let b = 2.5;
    let kb = catalog::get("cos:2.5").unwrap().function;
    let k1 = kernel("cos");
    let r = fpi(&kb, C::from(2.0), 0, f64::INFINITY).unwrap().value;
    let base = fpi(&k1, C::from(2.0), 0, f64::INFINITY).unwrap().value;
    assert!((r - base * b).norm() < 1e-9);
    let r = fpi(&kb, C::from(1.0), 0, f64::INFINITY).unwrap().value;
    assert!((r - C::from(-EULER_GAMMA - b.ln())).norm() < 1e-9);
}

#[test]
fn cos_truncated_limit_approaches_infinite_upper_limit() {
    let k = kernel("cos");
    let inf = fpi(&k, C::from(2.0), 0, f64::INFINITY).unwrap().value;
    let mut last = f64::INFINITY;
    for m in [10, 40, 160] {
        let a = (m as f64 + 0.5) * PI;
        // Average adjacent zeros to damp the O(1/a) oscillation.
        let v1 = fpi(&k, C::from(2.0), 0, a).unwrap().value;
        let v2 = fpi(&k, C::from(2.0), 0, a + PI).unwrap().value;
        let d = ((v1 + v2) * 0.5 - inf).norm();
        assert!(d < last);
        last = d;
    }
    assert!(last < 1e-5);
}

#[test]
fn route_agreement_on_grid() {
    for (name, a) in [("one", 1.0), ("reciprocal1p", 0.5), ("cos", f64::INFINITY), ("cos", 3.0), ("exp_neg", f64::INFINITY)] {
        let k = kernel(name);
        for lam in [0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
            for n in 0..2u32 {
                let l = C::from(lam);
                let main = fpi(&k, l, n, a).unwrap();
                let oracle = fpi_canonical_oracle(&k, l, n, a, &DEFAULT_EPS_SCHEDULE).unwrap();
                assert!((main.value - oracle.value).norm() <= (main.err_est + oracle.error).max(1e-8), "{name} {lam} {n}");
                if a.is_finite() {
                    let c = fpi_contour(&k, l, n, a, None).unwrap();
                    assert!((main.value - c).norm() < 1e-10, "{name} contour {lam} {n}");
                }
                if let Ok(m) = fpi_mellin(&k, l, n, a) {
                    assert!((main.value - m.value).norm() < 1e-10 + m.err_est, "{name} mellin {lam} {n}");
                }
            }
        }
    }
}

#[test]
fn contour_is_radius_independent() {
    let k = kernel("reciprocal1p");
    for (lam, n) in [(2.0, 0), (2.5, 1), (3.0, 1)] {
        let a = fpi_contour(&k, C::from(lam), n, 0.5, Some(0.1)).unwrap();
        let b = fpi_contour(&k, C::from(lam), n, 0.5, Some(0.4)).unwrap();
        assert!((a - b).norm() < 1e-11);
    }
}

#[test]
fn removable_points_have_no_circle_term() {
    // cos has taylor0[m - 1] = 0 at even m: \oint k z^-m dz vanishes.
    let k = kernel("cos");
    for m in [2i32, 4, 6] {
        let c = integrate_circle(|z| Ok(k.at_complex(z)? * z.powi(-m)), C::from(0.0), 0.5).unwrap();
        assert!(c.value.norm() <= 10.0 * c.error.max(1e-16), "m = {m}");
        assert_eq!(k.coeff(m as usize - 1), C::new(0.0, 0.0));
    }
}

#[test]
fn log_derivative_route() {
    let k = kernel("reciprocal1p");
    for lam in [1.5, 2.5] {
        for n in 1..3u32 {
            let a = fpi_log_derivative_route(&k, C::from(lam), n, 0.5).unwrap();
            let b = fpi(&k, C::from(lam), n, 0.5).unwrap().value;
            assert!((a - b).norm() < 1e-9);
        }
    }
    assert!(fpi_log_derivative_route(&k, C::from(2.0), 1, 0.5).is_err());
}

#[test]
fn zero_at_origin_reduction() {
    // k(t) = t^2 / (1 + t): order-2 zero.
    let taylor: Vec<C> = (0..64).map(|l| if l < 2 { C::from(0.0) } else if l % 2 == 0 { C::from(1.0) } else { C::from(-1.0) }).collect();
    let k = AnalyticFunction::new("t2", Arc::new(|t: f64| C::from(t * t / (1.0 + t))), taylor, 1.0)
        .with_complex(Arc::new(|z: C| z * z / (z + 1.0)));
    assert_eq!(k.zero_order().unwrap(), 2);
    let (nu, w, a) = (C::from(0.3), C::from(0.1), 0.5);
    let red = reduce_zero_at_origin(&k, nu, 0, w, a).unwrap();
    assert_eq!(red.order, 2);
    // \int_0^a t^(1 - nu)/(1+t) - w \int_0^a t^-nu/(1+t).
    let spec = QuadratureSpec::default().with_mode(EndpointMode::SingularLeft);
    let i0 = integrate_real(|t: f64| C::from(t.powf(0.7) / (1.0 + t)), 0.0, a, &spec).unwrap().value;
    let i1 = integrate_real(|t: f64| C::from(t.powf(-0.3) / (1.0 + t)), 0.0, a, &spec).unwrap().value;
    assert!((red.prefactor() - (i0 - w * i1)).norm() < 1e-12);
    assert!((red.remainder_factor - w * w).norm() < 1e-15);
    assert!(reduce_zero_at_origin(&kernel("reciprocal1p"), nu, 0, w, a).is_err());
}

#[test]
fn domain_errors() {
    let one = kernel("one");
    assert!(matches!(fpi(&one, C::from(2.0), 0, f64::INFINITY), Err(Error::MissingCapability { .. })));
    assert!(fpi(&one, C::from(2.0), 0, -1.0).is_err());
    let cos = kernel("cos");
    // a = inf needs Re lambda above the strip edge.
    assert!(fpi(&cos, C::from(-0.5), 0, f64::INFINITY).is_err());
    let bad = FpiOptions { eps: Some(2.0), ..Default::default() };
    assert!(fpi_with(&kernel("reciprocal1p"), C::from(2.0), 0, 0.5, &bad).is_err());
}

#[test]
fn short_taylor_data_is_rejected() {
    let short: Vec<C> = (0..6).map(|l| if l % 2 == 0 { C::from(1.0) } else { C::from(-1.0) }).collect();
    let k = AnalyticFunction::from_taylor("short", short, 1.0);
    assert!(matches!(fpi(&k, C::from(2.5), 0, 0.5), Err(Error::InsufficientTaylor { .. })));
}

#[test]
fn reglim_of_continuation_matches_integer_finite_part() {
    let k = kernel("reciprocal1p");
    for (r, s) in [(1.0, 0u32), (2.0, 0), (2.0, 1), (3.0, 1)] {
        let g = reglim(|z| fpi(&k, z + r, s, 0.5).map(|x| x.value), C::from(0.0), 0.25).unwrap();
        let direct = fpi(&k, C::from(r), s, 0.5).unwrap().value;
        assert!((g.value - direct).norm() < 1e-7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn epsilon_and_mellin_agree(lam in 0.55f64..4.5, n in 0u32..3) {
        prop_assume!((lam - lam.round()).abs() > 0.02);
        let k = kernel("reciprocal1p");
        let e = fpi(&k, C::from(lam), n, 0.5).unwrap();
        let m = fpi_mellin(&k, C::from(lam), n, 0.5).unwrap();
        prop_assert!((e.value - m.value).norm() < 1e-8 * e.value.norm().max(1.0));
    }

    #[test]
    fn differentiation_bridge(nu in 0.1f64..0.9, r in 0u32..3, s in 0u32..2) {
        // d/dlambda fp(lambda, s) = -fp(lambda, s + 1).
        let k = kernel("reciprocal1p");
        let lam = nu + r as f64;
        let h = 1e-4;
        let f = |x: f64| fpi(&k, C::from(x), s, 0.5).unwrap().value;
        let d = (f(lam - 2.0 * h) - f(lam - h) * 8.0 + f(lam + h) * 8.0 - f(lam + 2.0 * h)) / (12.0 * h);
        let rhs = -fpi(&k, C::from(lam), s + 1, 0.5).unwrap().value;
        prop_assert!((d - rhs).norm() < 1e-6 * rhs.norm().max(1.0));
    }
}
