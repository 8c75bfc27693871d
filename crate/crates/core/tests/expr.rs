use std::f64::consts::PI;

use fpint::expr::Expr;
use fpint::laurent::reglim;
use fpint::{Complex as C, Error};
use proptest::prelude::*;

fn eval(src: &str, z: C) -> C {
    Expr::parse(src).unwrap().eval(z).unwrap()
}

#[test]
fn precedence_and_associativity() {
    let z = C::from(2.0);
    assert_eq!(eval("1 + 2 * 3", z), C::from(7.0));
    assert_eq!(eval("2 ^ 3 ^ 2", z), C::from(512.0));
    assert_eq!(eval("-z ^ 2", z), C::from(-4.0));
    assert_eq!(eval("8 / 4 / 2", z), C::from(1.0));
    assert_eq!(eval("(1 + z) * (1 - z)", z), C::from(-3.0));
    assert_eq!(eval("1.5e1 + 2E-1", z), C::from(15.2));
}

#[test]
fn names_and_constants() {
    let z = C::new(0.3, 0.4);
    for v in ["z", "t", "x", "lambda"] {
        assert_eq!(eval(v, z), z);
    }
    assert_eq!(eval("i * i", z), C::from(-1.0));
    assert!((eval("pi", z).re - PI).abs() < 1e-15);
    assert!((eval("log(e)", z).re - 1.0).abs() < 1e-15);
    assert!((eval("exp(z)", z) - z.exp()).norm() < 1e-15);
    assert!((eval("gamma(5)", z).re - 24.0).abs() < 1e-12);
    assert!((eval("j0(0)", z).re - 1.0).abs() < 1e-15);
    assert!((eval("csc(z) * sin(z)", z) - 1.0).norm() < 1e-14);
}

#[test]
fn parse_errors() {
    for bad in ["", "1 +", "(z", "z)", "foo(z)", "2 $ 3", "1..2"] {
        assert!(matches!(Expr::parse(bad), Err(Error::Parse(_))), "{bad}");
    }
    assert!(Expr::parse("gamma(z)").unwrap().eval(C::from(0.0)).is_err());
}

#[test]
fn drives_the_regularized_limit() {
    let e = Expr::parse("1/(z*(z+1)*(z+2))").unwrap();
    let r = reglim(|z| e.eval(z), C::from(0.0), 0.5).unwrap();
    assert!((r.value + 0.75).norm() < 1e-10);
}

proptest! {
    #[test]
    fn polynomial_round_trip(a in -5.0f64..5.0, b in -5.0f64..5.0, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let z = C::new(re, im);
        let src = format!("({a}) * z^2 + ({b}) * z - 1");
        let v = eval(&src, z);
        prop_assert!((v - (z * z * a + z * b - 1.0)).norm() < 1e-12 * (1.0 + v.norm()));
    }
}
