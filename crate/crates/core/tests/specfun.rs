use std::f64::consts::PI;

use fpint::specfun::*;
use fpint::{Complex as C, Error};
use proptest::prelude::*;

fn close(a: C, b: C, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

// Reference values below were produced with mpmath at 30 digits.

#[test]
fn gamma_reference_values() {
    let cases = [
        (C::from(0.5), C::from(1.772_453_850_905_516)),
        (C::from(3.7), C::from(4.170_651_783_796_604)),
        (C::from(-2.3), C::from(-1.447_107_394_255_918_1)),
        (C::new(1.5, 2.0), C::new(0.165_915_108_938_990_95, 0.149_463_473_266_419_49)),
    ];
    for (z, want) in cases {
        assert!(close(gamma(z).unwrap(), want, 1e-13), "gamma({z})");
    }
    assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
}

#[test]
fn gamma_poles_are_errors() {
    for n in [0.0, -1.0, -7.0] {
        assert!(matches!(gamma(C::from(n)), Err(Error::Pole { .. })));
    }
}

#[test]
fn gamma_reflection_on_grid() {
    // Gamma(-z) Gamma(1 + z) = -pi csc(pi z) on non-integer points in |z| < 5.
    let mut worst = 0.0f64;
    let mut count = 0;
    for i in 0..10 {
        for j in 0..10 {
            let z = C::from_polar(0.3 + 0.47 * i as f64, 0.1 + 0.6 * j as f64);
            count += 1;
            let lhs = gamma(-z).unwrap() * gamma(z + 1.0).unwrap();
            let rhs = -PI / (z * PI).sin();
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
    }
    assert_eq!(count, 100);
    assert!(worst < 1e-10, "worst {worst:e}");
}

#[test]
fn polygamma_reference_values() {
    let psi = [
        (C::from(1.0), C::from(-EULER_GAMMA)),
        (C::from(0.25), C::from(-4.227_453_533_376_265)),
        (C::from(7.5), C::from(1.946_757_484_246_086_8)),
        (C::new(-0.5, 1.2), C::new(0.444_105_607_899_232_6, 2.279_186_653_934_904_6)),
    ];
    for (z, want) in psi {
        assert!(close(digamma(z).unwrap(), want, 1e-13), "psi({z})");
    }
    let tri = [(1.0, PI * PI / 6.0), (0.3, 12.245_364_546_107_731), (12.0, 0.086_901_872_871_768_39)];
    for (x, want) in tri {
        assert!(close(polygamma(1, C::from(x)).unwrap(), C::from(want), 1e-13), "psi1({x})");
    }
    assert!(close(polygamma(3, C::from(2.5)).unwrap(), C::from(0.223_905_848_817_252_05), 1e-12));
}

#[test]
fn bernoulli_and_zeta() {
    assert_eq!(bernoulli(1).unwrap(), -0.5);
    assert_eq!(bernoulli(7).unwrap(), 0.0);
    assert!((bernoulli(20).unwrap() + 529.124_242_424_242_4).abs() < 1e-10);
    assert!(matches!(bernoulli(200), Err(Error::OutOfTable(_))));
    assert!((zeta_int(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
    assert!((zeta_int(3).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-15);
    assert!((zeta_int(40).unwrap() - 1.000_000_000_000_909_5).abs() < 1e-15);
}

#[test]
fn factorial_binomial_pochhammer() {
    assert_eq!(factorial(0), 1.0);
    assert_eq!(factorial(10), 3_628_800.0);
    assert_eq!(binomial(6, 2), 15.0);
    assert!(close(pochhammer(C::from(0.5), 3), C::from(0.5 * 1.5 * 2.5), 1e-15));
}

#[test]
fn bessel_reference_values() {
    let cases = [
        (0.1, 0.997_501_562_066_040, -1.534_238_651_350_366_8),
        (1.0, 0.765_197_686_557_966_6, 0.088_256_964_215_676_96),
        (5.0, -0.177_596_771_314_338_3, -0.308_517_625_249_033_8),
        (7.99, 0.173_990_013_127_932_58, 0.221_928_741_785_763_15),
        (8.01, 0.169_297_369_110_542_96, 0.225_089_909_293_579_13),
        (12.0, 0.047_689_310_796_833_54, -0.225_237_312_634_361_43),
        (24.9, 0.083_245_968_353_015_49, -0.136_499_183_996_765_24),
        (25.1, 0.108_275_671_499_949_45, -0.116_767_707_638_036_95),
        (40.0, 0.007_366_890_584_237_289, 0.125_936_417_058_260_93),
        (100.0, 0.019_985_850_304_223_122, -0.077_244_313_365_083_15),
    ];
    for (x, j, y) in cases {
        assert!((bessel_j0(x) - j).abs() < 1e-12, "J0({x}) = {}", bessel_j0(x));
        assert!((bessel_y0(x) - y).abs() < 1e-12, "Y0({x}) = {}", bessel_y0(x));
    }
    let z = j0_series(C::new(1.0, 2.0));
    assert!(close(z, C::new(1.586_259_450_202_371_2, -1.391_602_452_327_336), 1e-13));
}

#[test]
fn hyp1f2_reference_values() {
    let a = hyp1f2_unit(C::from(1.25), C::from(1.25), C::from(-0.3)).unwrap();
    assert!(close(a, C::from(0.819_059_931_279_696_6), 1e-14));
    let b = hyp1f2_unit(C::new(1.5, 0.2), C::from(2.0), C::from(0.7)).unwrap();
    assert!(close(b, C::new(1.251_359_976_921_895, -0.035_399_937_876_799_55), 1e-14));
}

#[test]
fn gauss_kronrod_is_exact_on_polynomials() {
    // A single 15-point Kronrod panel integrates degree 22 exactly.
    for deg in [0, 5, 13, 22] {
        let r = integrate_real(|t: f64| C::from(t.powi(deg)), 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value.re - 1.0 / (deg as f64 + 1.0)).abs() < 1e-15, "degree {deg}");
    }
}

#[test]
fn quadrature_endpoint_modes() {
    let spec = QuadratureSpec::default().with_mode(EndpointMode::SingularLeft);
    let r = integrate_real(|t: f64| C::from(t.ln() / t.sqrt()), 0.0, 1.0, &spec).unwrap();
    assert!((r.value.re + 4.0).abs() < 1e-12);
    let spec = QuadratureSpec::default().with_mode(EndpointMode::SemiInfinite);
    let r = integrate_real(|t: f64| C::from((-t).exp() * t.ln().powi(2) / t.sqrt()), 1.0, f64::INFINITY, &spec).unwrap();
    let head = integrate_real(
        |t: f64| C::from((-t).exp() * t.ln().powi(2) / t.sqrt()),
        0.0,
        1.0,
        &QuadratureSpec::default().with_mode(EndpointMode::SingularLeft),
    )
    .unwrap();
    assert!((r.value.re + head.value.re - 15.580_177_442_406_16).abs() < 1e-11);
}

#[test]
fn error_estimates_bound_true_errors() {
    let spec = QuadratureSpec::default();
    let cases: Vec<(Box<dyn Fn(f64) -> C>, f64, f64, f64)> = vec![
        (Box::new(|t: f64| C::from(1.0 / (1.0 + t))), 0.0, 0.5, 1.5f64.ln()),
        (Box::new(|t: f64| C::from(t.cos())), 0.0, 10.0, 10f64.sin()),
        (Box::new(|t: f64| C::from((-t).exp())), 0.0, 3.0, 1.0 - (-3f64).exp()),
    ];
    for (f, a, b, exact) in cases {
        let r = integrate_real(f, a, b, &spec).unwrap();
        assert!((r.value.re - exact).abs() <= r.error.max(4.0 * f64::EPSILON * exact.abs()));
    }
}

#[test]
fn oscillatory_tails() {
    let spec = QuadratureSpec::default();
    let r = integrate_oscillatory(|t: f64| C::from(t.cos() / t), 1.0, PI, 0.5, &spec).unwrap();
    assert!((r.value.re + 0.337_403_922_900_968_1).abs() < 1e-10);
    let head = integrate_real(|t: f64| C::from(t.cos() / t.sqrt()), 0.0, 1.0, &spec.with_mode(EndpointMode::SingularLeft)).unwrap();
    let tail = integrate_oscillatory(|t: f64| C::from(t.cos() / t.sqrt()), 1.0, PI, 0.5, &spec).unwrap();
    assert!((head.value.re + tail.value.re - (PI / 2.0).sqrt()).abs() < 1e-10);
}

#[test]
fn circle_integrals() {
    let c0 = C::new(0.3, -0.2);
    let poly = integrate_circle(|z| Ok(z * z * z - z * 2.0 + 7.0), c0, 0.7).unwrap();
    assert!(poly.value.norm() < 1e-14);
    let c = C::new(2.0, -1.5);
    let pole = integrate_circle(|z| Ok(c / (z - c0)), c0, 0.7).unwrap();
    assert!((pole.value - c).norm() < 1e-14);
    assert!(pole.nodes >= MIN_NODES && pole.nodes <= MAX_NODES);
}

#[test]
fn circle_through_singularity_is_reported() {
    let r = circle_coefficients(|z| Ok((z - 1.0).inv()), C::from(0.0), 1.0, 0, 4);
    assert!(matches!(r, Err(Error::SingularityOnCircle { .. })));
}

proptest! {
    #[test]
    fn polygamma_recurrence(re in 0.2f64..6.0, im in -3.0f64..3.0, l in 0u32..4) {
        let z = C::new(re, im);
        let lhs = polygamma(l, z + 1.0).unwrap() - polygamma(l, z).unwrap();
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = z.powi(-(l as i32) - 1) * (sign * factorial(l));
        prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn gamma_functional_equation(re in -4.5f64..6.0, im in 0.1f64..3.0) {
        let z = C::new(re, im);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = gamma(z).unwrap() * z;
        prop_assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn circle_recovers_simple_pole_residue(re in -2.0f64..2.0, im in -2.0f64..2.0, r in 0.1f64..3.0) {
        let c = C::new(re, im);
        let out = integrate_circle(|z| Ok(c / (z - 1.0)), C::from(1.0), r).unwrap();
        prop_assert!((out.value - c).norm() < 1e-13 * c.norm().max(1.0));
    }
}
