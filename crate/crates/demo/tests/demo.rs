use fpint_demo::{asymptotic_ratio, fpi_curve, kernels, reglim_expr};

#[test]
fn curve_passes_through_known_values() {
    let v = fpi_curve("one", 0, 1.0, 2.0, 4.0, 3).unwrap();
    assert_eq!(v.len(), 9);
    // lambda = 2, 3, 4 give -1, -1/2, -1/3.
    for (i, want) in [-1.0, -0.5, -1.0 / 3.0].iter().enumerate() {
        assert!((v[3 * i + 1] - want).abs() < 1e-12);
    }
    let cos = fpi_curve("cos", 0, 0.0, 0.5, 0.5 + 1e-9, 2).unwrap();
    assert!((cos[1] - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-8);
}

#[test]
fn curve_rejects_bad_input() {
    assert!(fpi_curve("one", 0, 1.0, 2.0, 1.0, 10).is_err());
    assert!(fpi_curve("one", 0, 1.0, 1.0, 2.0, 1).is_err());
    assert!(fpi_curve("nope", 0, 1.0, 1.0, 2.0, 10).is_err());
    assert!(fpi_curve("one", 0, 0.0, 1.0, 2.0, 10).is_err());
}

#[test]
fn reglim_depends_on_the_radius() {
    let e = "1/(z*(z+1)*(z+2))";
    let inner = reglim_expr(e, 0.0, 0.0, 0.5).unwrap();
    let outer = reglim_expr(e, 0.0, 0.0, 1.5).unwrap();
    assert!((inner[0] + 0.75).abs() < 1e-10);
    assert!((outer[0] - 0.25).abs() < 1e-10);
    assert!(reglim_expr("1/(", 0.0, 0.0, 0.5).is_err());
    assert!(reglim_expr(e, 0.0, 0.0, -1.0).is_err());
}

#[test]
fn ratio_tends_to_one() {
    let v = asymptotic_ratio("one", 0.5, 1, 1.0, 5, 1).unwrap();
    assert_eq!(v.len(), 10);
    assert!((v[8] - 1e-5).abs() < 1e-18);
    assert!((v[9] - 1.0).abs() < (v[1] - 1.0).abs());
    assert!((v[9] - 1.0).abs() < 1e-3);
    assert!(asymptotic_ratio("one", 0.5, 1, 1.0, 0, 1).is_err());
}

#[test]
fn kernel_list() {
    assert!(kernels().split(',').any(|k| k == "reciprocal1p"));
}
