use std::f64::consts::PI;

use fracbinom_core::gamma::{ln_abs_gamma, GammaPoleSet};
use fracbinom_core::{gamma, gamma_half_exact, ln_gamma, reciprocal_gamma, Error};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

proptest! {
    #[test]
    fn recurrence(x in 0.5f64..100.0) {
        let lhs = gamma(x + 1.0).unwrap();
        prop_assert!(rel(x * gamma(x).unwrap(), lhs) <= 1e-12);
    }

    #[test]
    fn duplication(x in 1e-3f64..50.0) {
        let lhs = gamma(x).unwrap() * gamma(x + 0.5).unwrap();
        let rhs = 2f64.powf(1.0 - 2.0 * x) * PI.sqrt() * gamma(2.0 * x).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-11, "x={x}");
    }

    #[test]
    fn reflection_product(z in -10.0f64..10.0) {
        prop_assume!(z.fract() != 0.0);
        let lhs = reciprocal_gamma(1.0 + z) * reciprocal_gamma(1.0 - z);
        prop_assert!(rel(lhs, (PI * z).sin() / (PI * z)) <= 1e-12, "z={z}");
    }

    #[test]
    fn ln_gamma_agrees_with_gamma(x in 0.05f64..170.0) {
        let a = ln_gamma(x).unwrap();
        let b = gamma(x).unwrap().ln();
        prop_assert!((a - b).abs() <= 2e-14 * a.abs().max(1.0));
    }

    #[test]
    fn negative_arguments_via_log(x in -60.0f64..-0.01) {
        prop_assume!(x.fract() != 0.0);
        let (l, s) = ln_abs_gamma(x).unwrap();
        prop_assert!(rel(s * l.exp(), gamma(x).unwrap()) <= 1e-12, "x={x}");
    }

    #[test]
    fn half_integers_exact(two_x in 1i64..=120) {
        let e = gamma_half_exact(two_x).unwrap();
        prop_assert!(rel(e.to_f64(), gamma(two_x as f64 / 2.0).unwrap()) <= 1e-13);
    }
}

#[test]
fn poles_only_on_exact_hits() {
    for m in 0..50 {
        let x = -(m as f64);
        assert!(GammaPoleSet::contains(x));
        assert!(matches!(gamma(x), Err(Error::Domain(_))));
        assert_eq!(reciprocal_gamma(x), 0.0);
        let near = x + 1e-9;
        assert!(!GammaPoleSet::contains(near));
        assert!(gamma(near).is_ok());
    }
    assert!(GammaPoleSet::contains_ratio(-6, 3));
    assert!(!GammaPoleSet::contains_ratio(-7, 3));
    assert!(!GammaPoleSet::contains_ratio(6, 3));
}

#[test]
fn overflow_boundary() {
    assert!(gamma(171.6).unwrap().is_finite());
    assert!(matches!(gamma(171.7), Err(Error::Overflow(_))));
    assert!(ln_gamma(1e5).unwrap().is_finite());
}
