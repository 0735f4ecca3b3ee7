use std::f64::consts::PI;

use fracbinom_core::fracbinom::binom;
use fracbinom_core::hypergeom::{ellipse_perimeter, gauss_at_one, hyp2f1, hyp2f1_euler, HypParams};
use fracbinom_core::oracle::{ellipse_arc_length, OracleConfig};
use fracbinom_core::quad::QuadraturePolicy;
use fracbinom_core::{Beta, Error, SeriesPolicy};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn series(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let out = hyp2f1(&HypParams::new(a, b, c, x), &SeriesPolicy::default()).unwrap();
    assert!(out.converged, "₂F₁({a}, {b}; {c}; {x}): {out:?}");
    out.value
}

#[test]
fn gauss_matches_coefficients() {
    for beta in [
        Beta::rational(1, 4).unwrap(),
        Beta::half(),
        Beta::rational(1, 1).unwrap(),
    ] {
        let b = beta.value();
        for n in 0..=20u32 {
            for k in 0..=n as i64 {
                let g = gauss_at_one(-b * k as f64, -b * (n as i64 - k) as f64, 1.0).unwrap();
                let direct = binom(n, k, beta).unwrap();
                assert!(rel(g, direct) <= 1e-10, "β={b} n={n} k={k}: {g} vs {direct}");
            }
        }
    }
}

#[test]
fn known_values() {
    assert_eq!(series(0.0, 2.5, 3.0, 0.7), 1.0);
    assert_eq!(series(-1.0, -1.0, 1.0, 1.0), 2.0);
    assert!(rel(series(-0.5, -0.5, 1.0, 1.0), 4.0 / PI) < 1e-8);
    assert!(rel(gauss_at_one(-0.5, -1.5, 1.0).unwrap(), 16.0 / (3.0 * PI)) < 1e-15);
    // ₂F₁(1/2, 1/2; 3/2; x²) = asin(x)/x
    let x: f64 = 0.6;
    assert!(rel(series(0.5, 0.5, 1.5, x * x), x.asin() / x) < 1e-13);
}

#[test]
fn divergence_and_domain() {
    let p = HypParams::new(1.0, 1.0, 1.5, 1.0);
    assert!(matches!(
        hyp2f1(&p, &SeriesPolicy::default()),
        Err(Error::Divergence(_))
    ));
    assert!(hyp2f1(&HypParams::new(1.0, 1.0, 2.0, 1.5), &SeriesPolicy::default()).is_err());
    assert!(hyp2f1(&HypParams::new(1.0, 1.0, -2.0, 0.5), &SeriesPolicy::default()).is_err());
    assert!(gauss_at_one(1.0, 1.0, 1.5).is_err());
    let euler = QuadraturePolicy::default();
    assert!(hyp2f1_euler(&HypParams::new(1.0, -0.5, 1.0, 0.5), &euler).is_err());
    assert!(hyp2f1_euler(&HypParams::new(1.0, 0.5, 0.5, 0.5), &euler).is_err());
}

#[test]
fn ellipse_examples() {
    assert!(rel(ellipse_perimeter(1.0, 1.0).unwrap(), 2.0 * PI) < 1e-14);
    assert!((ellipse_perimeter(1.0, 0.0).unwrap() - 4.0).abs() <= 1e-10);
    let cfg = OracleConfig::default();
    let arc = ellipse_arc_length(2.0, 1.0, &cfg).unwrap();
    assert!(rel(ellipse_perimeter(2.0, 1.0).unwrap(), arc) <= 1e-8);
    assert!((arc - 9.688_448_2).abs() < 1e-7);
    assert!(ellipse_perimeter(0.0, 0.0).is_err());
}

proptest! {
    #[test]
    fn series_agrees_with_gauss_at_one(a in -2.0f64..2.0, b in -2.0f64..2.0, gap in 0.5f64..3.0) {
        let c = a + b + gap;
        prop_assume!(c > 0.05);
        let g = gauss_at_one(a, b, c).unwrap();
        let s = series(a, b, c, 1.0);
        prop_assert!((s - g).abs() <= 1e-8 * g.abs().max(1.0), "{a} {b} {c}: {s} vs {g}");
    }

    #[test]
    fn euler_integral_agrees_with_series(
        a in -2.0f64..2.0,
        b in 0.2f64..3.0,
        d in 0.2f64..3.0,
        x in 0.0f64..=0.9,
    ) {
        let p = HypParams::new(a, b, b + d, x);
        let e = hyp2f1_euler(&p, &QuadraturePolicy::default()).unwrap();
        let s = series(a, b, b + d, x);
        prop_assert!((e - s).abs() <= 1e-8 * s.abs().max(1.0), "{p:?}: {e} vs {s}");
    }

    #[test]
    fn perimeter_symmetric_and_monotone(a in 0.01f64..10.0, b in 0.01f64..10.0, step in 0.01f64..1.0) {
        let p = ellipse_perimeter(a, b).unwrap();
        prop_assert!(rel(ellipse_perimeter(b, a).unwrap(), p) <= 1e-14);
        prop_assert!(ellipse_perimeter(a + step, b).unwrap() > p);
        prop_assert!(ellipse_perimeter(a, b + step).unwrap() > p);
    }

    #[test]
    fn perimeter_matches_arc_length(a in 0.05f64..5.0, b in 0.05f64..5.0) {
        let arc = ellipse_arc_length(a, b, &OracleConfig::default()).unwrap();
        prop_assert!(rel(ellipse_perimeter(a, b).unwrap(), arc) <= 1e-8);
    }

    #[test]
    fn perimeter_scales(a in 0.1f64..5.0, b in 0.1f64..5.0, s in 0.1f64..10.0) {
        let p = ellipse_perimeter(a, b).unwrap();
        prop_assert!(rel(ellipse_perimeter(s * a, s * b).unwrap(), s * p) <= 1e-13);
    }
}
