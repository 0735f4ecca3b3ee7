//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adaptive-integration contract used by every integral-route evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraturePolicy {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        QuadraturePolicy {
            abs_tol: 1e-12,
            rel_tol: 0.0,
            max_subdivisions: 2000,
        }
    }
}

impl QuadraturePolicy {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadraturePolicy {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature needs a positive abs_tol or rel_tol"));
        }
        if self.abs_tol < 0.0 || self.rel_tol < 0.0 || self.max_subdivisions == 0 {
            return Err(Error::domain("invalid quadrature policy"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

// Kronrod abscissae (descending), Kronrod weights, and the weights of the
// embedded 7-point Gauss rule (which uses the odd-indexed abscissae).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// ∫_a^b f over a finite interval; `a > b` flips the sign.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, policy: &QuadraturePolicy) -> Result<QuadOutcome> {
    policy.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("quadrature limits must be finite"));
    }
    if a == b {
        return Ok(QuadOutcome {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let out = integrate(f, b, a, policy)?;
        return Ok(QuadOutcome {
            value: -out.value,
            ..out
        });
    }

    let first = gauss_kronrod(&mut f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;
    loop {
        let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if !value.is_finite() {
            return Err(Error::Accuracy {
                what: "integrand produced a non-finite value".into(),
                value,
                estimate: error,
            });
        }
        let target = policy.abs_tol.max(policy.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadOutcome {
                value,
                abs_error: error,
                evaluations,
            });
        }
        if subdivisions >= policy.max_subdivisions {
            return Err(Error::Accuracy {
                what: format!("adaptive quadrature on [{a}, {b}] hit {subdivisions} subdivisions"),
                value,
                estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // the panel cannot be split further in double precision
            return Err(Error::Accuracy {
                what: format!("quadrature panel near {mid} cannot be refined"),
                value,
                estimate: error,
            });
        }
        heap.push(gauss_kronrod(&mut f, worst.a, mid));
        heap.push(gauss_kronrod(&mut f, mid, worst.b));
        evaluations += 30;
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let out = integrate(|x| x.powi(5) - 2.0 * x * x, 0.0, 2.0, &QuadraturePolicy::default()).unwrap();
        let exact = 64.0 / 6.0 - 16.0 / 3.0;
        assert!((out.value - exact).abs() < 1e-13);
    }

    #[test]
    fn arctan_integral() {
        let out = integrate(
            |s| 1.0 / (1.0 + s * s),
            0.0,
            1.0,
            &QuadraturePolicy::with_abs_tol(1e-13),
        )
        .unwrap();
        assert!((out.value - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let p = QuadraturePolicy::default();
        let fwd = integrate(f64::exp, 0.0, 1.0, &p).unwrap().value;
        let bwd = integrate(f64::exp, 1.0, 0.0, &p).unwrap().value;
        assert_eq!(fwd, -bwd);
    }

    #[test]
    fn endpoint_singularity_converges_adaptively() {
        let p = QuadraturePolicy {
            abs_tol: 1e-9,
            rel_tol: 0.0,
            max_subdivisions: 5000,
        };
        let out = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, &p).unwrap();
        assert!((out.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn subdivision_limit_reports_accuracy_error() {
        let p = QuadraturePolicy {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_subdivisions: 3,
        };
        let err = integrate(|x| (50.0 * x).sin().abs(), 0.0, 10.0, &p).unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn bad_policy_is_rejected() {
        let p = QuadraturePolicy {
            abs_tol: 0.0,
            rel_tol: 0.0,
            max_subdivisions: 10,
        };
        assert!(integrate(|x| x, 0.0, 1.0, &p).is_err());
    }
}
