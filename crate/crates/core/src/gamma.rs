//! The Gamma function on the real line.
//!
//! `gamma` uses the rational Lanczos approximation (g ≈ 6.0247, 13 terms)
//! with a correction for the rounding of `x + g − 1/2`, reflection for
//! negative arguments and an exact factorial table at the integers.
//! `ln_gamma` switches to Stirling's series for large arguments and to the
//! ζ-series of ln Γ(1 + ε) near its two zeros, so it keeps relative accuracy
//! there.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, rational_to_f64};

/// Largest argument whose Γ is finite in double precision.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const LANCZOS_N: usize = 12;
#[allow(clippy::excessive_precision)]
const GMHALF: f64 = 5.524_680_040_776_729_583_740_234_375;
#[allow(clippy::excessive_precision)]
const LANCZOS_NUM: [f64; LANCZOS_N + 1] = [
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
];
#[allow(clippy::excessive_precision)]
const LANCZOS_DEN: [f64; LANCZOS_N + 1] = [
    0.0,
    39916800.0,
    120543840.0,
    150917976.0,
    105258076.0,
    45995730.0,
    13339535.0,
    2637558.0,
    357423.0,
    32670.0,
    1925.0,
    66.0,
    1.0,
];

fn lanczos_ratio(x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    if x < 8.0 {
        for i in (0..=LANCZOS_N).rev() {
            num = num * x + LANCZOS_NUM[i];
            den = den * x + LANCZOS_DEN[i];
        }
    } else {
        for i in 0..=LANCZOS_N {
            num = num / x + LANCZOS_NUM[i];
            den = den / x + LANCZOS_DEN[i];
        }
    }
    num / den
}

/// (n−1)! for n = 1..=171, correctly rounded from the exact integers.
fn factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut acc = BigInt::one();
        let mut out = Vec::with_capacity(171);
        out.push(1.0);
        for i in 1..=170u32 {
            acc *= BigInt::from(i);
            out.push(acc.to_f64().unwrap_or(f64::INFINITY));
        }
        out
    })
}

/// sin(πx) with exact argument reduction.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = x - 2.0 * (0.5 * x).round();
    let (sign, a) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let a = if a > 0.5 { 1.0 - a } else { a };
    let v = if a > 0.25 {
        (PI * (0.5 - a)).cos()
    } else {
        (PI * a).sin()
    };
    sign * v
}

/// Membership in the pole set {0, −1, −2, …} of Γ.
///
/// Floating arguments count as poles only on an exact hit; rational arguments
/// are decided exactly.
#[derive(Debug, Clone, Copy, Default)]
pub struct GammaPoleSet;

impl GammaPoleSet {
    pub fn contains(x: f64) -> bool {
        x <= 0.0 && x == x.floor()
    }

    /// Is `num/den` a non-positive integer?
    pub fn contains_ratio(num: i128, den: i128) -> bool {
        den != 0 && num % den == 0 && num / den <= 0
    }

    pub fn contains_rational(q: &BigRational) -> bool {
        q.is_integer() && q <= &BigRational::zero()
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() {
        return Err(Error::domain("Γ of NaN"));
    }
    if GammaPoleSet::contains(x) {
        return Err(Error::domain(format!("Γ has a pole at {x}")));
    }
    Ok(())
}

/// Γ(x) for real x off the poles.
pub fn gamma(x: f64) -> Result<f64> {
    check_argument(x)?;
    if x == x.floor() && x <= 171.0 {
        return Ok(factorial_table()[x as usize - 1]);
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(format!("Γ({x}) exceeds the double range")));
    }
    let absx = x.abs();
    if absx < f64::EPSILON * 0.25 {
        return Ok(1.0 / x);
    }
    if x < -184.0 {
        // |Γ(x)| < 1e-330: underflows; sign alternates between integers
        let s = if (x.floor() as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(s * 0.0);
    }

    let mut y = absx + GMHALF;
    let mut dy = if absx > GMHALF {
        (y - absx) - GMHALF
    } else {
        (y - GMHALF) - absx
    };
    let mut z = absx - 0.5;
    let mut r = lanczos_ratio(absx) * (-y).exp();
    if x < 0.0 {
        r = -PI / (sinpi(absx) * absx * r);
        dy = -dy;
        z = -z;
    }
    r += dy * (GMHALF + 0.5) * r / y;
    let half_power = y.powf(0.5 * z);
    y = r * half_power * half_power;
    if y.is_infinite() {
        return Err(Error::Overflow(format!("Γ({x}) exceeds the double range")));
    }
    Ok(y)
}

fn zeta_values() -> &'static [f64] {
    // ζ(k) for k = 0..=40 (entries 0 and 1 unused), Euler–Maclaurin at N = 20.
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        const BERNOULLI_OVER_FACT: [f64; 6] = [
            1.0 / 6.0 / 2.0,
            -1.0 / 30.0 / 24.0,
            1.0 / 42.0 / 720.0,
            -1.0 / 30.0 / 40320.0,
            5.0 / 66.0 / 3628800.0,
            -691.0 / 2730.0 / 479001600.0,
        ];
        let n = 20.0_f64;
        let mut out = vec![f64::NAN, f64::NAN];
        for k in 2..=40 {
            let s = k as f64;
            let mut acc: f64 = (1..20).map(|i| (i as f64).powf(-s)).rev().sum();
            acc += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
            let mut rising = s; // s (s+1) … (s+2j−2)
            for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
                let order = 2 * j + 1;
                acc += b * rising * n.powf(-s - order as f64);
                rising *= (s + order as f64) * (s + order as f64 + 1.0);
            }
            out.push(acc);
        }
        out
    })
}

/// ln Γ(1 + ε) for |ε| ≤ 0.25.
fn ln_gamma_1p(eps: f64) -> f64 {
    let zeta = zeta_values();
    let mut acc = 0.0;
    let mut power = eps * eps;
    for (k, z) in zeta.iter().enumerate().skip(2) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * z * power / k as f64;
        power *= eps;
    }
    acc - EULER_GAMMA * eps
}

fn ln_gamma_stirling(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in COEFFS {
        corr += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + corr
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln Γ requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if (x - 1.0).abs() <= 0.25 {
        return Ok(ln_gamma_1p(x - 1.0));
    }
    if (x - 2.0).abs() <= 0.25 {
        let eps = x - 2.0;
        return Ok(ln_gamma_1p(eps) + eps.ln_1p());
    }
    if x < 15.0 {
        return Ok(gamma(x)?.ln());
    }
    Ok(ln_gamma_stirling(x))
}

/// ln |Γ(x)| and the sign of Γ(x), for any x off the poles.
pub fn ln_abs_gamma(x: f64) -> Result<(f64, f64)> {
    check_argument(x)?;
    if x > 0.0 {
        return Ok((ln_gamma(x)?, 1.0));
    }
    // Γ(x) = π / (sin(πx) Γ(1−x))
    let s = sinpi(x);
    let ln = PI.ln() - s.abs().ln() - ln_gamma(1.0 - x)?;
    Ok((ln, s.signum()))
}

/// 1/Γ(x): entire, and exactly zero at the poles.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if GammaPoleSet::contains(x) {
        return 0.0;
    }
    if x > 171.0 {
        return match ln_gamma(x) {
            Ok(l) => (-l).exp(),
            Err(_) => f64::NAN,
        };
    }
    if x < -170.0 {
        // 1/Γ(x) = Γ(1−x) sin(πx) / π
        let s = sinpi(x);
        return match ln_gamma(1.0 - x) {
            Ok(l) => s.signum() * (l + s.abs().ln() - PI.ln()).exp(),
            Err(_) => f64::NAN,
        };
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => f64::NAN,
    }
}

/// Γ at an integer or half-integer, as `rational · √π^{sqrt_pi_power}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGammaExact {
    pub rational_part: BigRational,
    pub sqrt_pi_power: u8,
}

impl HalfGammaExact {
    pub fn to_f64(&self) -> f64 {
        let q = rational_to_f64(&self.rational_part);
        if self.sqrt_pi_power == 1 {
            q * PI.sqrt()
        } else {
            q
        }
    }
}

/// Exact Γ(two_x / 2).
pub fn gamma_half_exact(two_x: i64) -> Result<HalfGammaExact> {
    if two_x % 2 == 0 {
        let m = two_x / 2;
        if m <= 0 {
            return Err(Error::domain(format!("Γ has a pole at {m}")));
        }
        return Ok(HalfGammaExact {
            rational_part: BigRational::from_integer(factorial((m - 1) as u64)),
            sqrt_pi_power: 0,
        });
    }
    // two_x = 2j + 1, x = j + 1/2
    let j = (two_x - 1).div_euclid(2);
    let rational_part = if j >= 0 {
        let j = j as u64;
        let four_pow = BigInt::from(4).pow(j as u32);
        BigRational::new(factorial(2 * j), four_pow * factorial(j))
    } else {
        // Γ(1/2 − i) = (−4)^i i! / (2i)!
        let i = (-j) as u64;
        let num = BigInt::from(-4).pow(i as u32) * factorial(i);
        BigRational::new(num, factorial(2 * i))
    };
    Ok(HalfGammaExact {
        rational_part,
        sqrt_pi_power: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn spot_values() {
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-15);
        assert!(rel(gamma(1.5).unwrap(), 0.5 * PI.sqrt()) < 1e-15);
    }

    #[test]
    fn poles_and_overflow() {
        assert!(matches!(gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(gamma(-3.0), Err(Error::Domain(_))));
        assert!(matches!(gamma(172.0), Err(Error::Overflow(_))));
        assert!(gamma(171.5).unwrap().is_finite());
        // close to a pole is not a pole
        assert!(gamma(-3.0 + 1e-12).unwrap().abs() > 1e10);
    }

    #[test]
    fn ln_gamma_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert!(rel(ln_gamma(5.0).unwrap(), 24f64.ln()) < 1e-15);
        // ln(100!) to 40 digits: 363.7393755555634901440799933696556380278
        assert!(rel(ln_gamma(101.0).unwrap(), 363.739_375_555_563_49) < 1e-14);
        assert!(matches!(ln_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(ln_gamma(-1.5), Err(Error::Domain(_))));
        // relative accuracy at the zeros' neighbourhoods: ln Γ(1+ε) ≈ −γ ε
        let x = 1.0 + 1e-9;
        assert!(rel(ln_gamma(x).unwrap(), -EULER_GAMMA * (x - 1.0)) < 1e-8);
        // ln Γ(2+ε) ≈ (1 − γ) ε
        let x = 2.0 + 1e-9;
        assert!(rel(ln_gamma(x).unwrap(), (1.0 - EULER_GAMMA) * (x - 2.0)) < 1e-8);
    }

    #[test]
    fn ln_gamma_matches_gamma_everywhere_it_can() {
        let mut x = 0.01;
        while x < 170.0 {
            let a = ln_gamma(x).unwrap();
            let b = gamma(x).unwrap().ln();
            let scale = a.abs().max(1.0);
            assert!((a - b).abs() / scale < 2e-14, "x={x}: {a} vs {b}");
            x *= 1.07;
        }
    }

    #[test]
    fn reciprocal_gamma_is_total() {
        assert_eq!(reciprocal_gamma(0.0), 0.0);
        assert_eq!(reciprocal_gamma(-3.0), 0.0);
        assert!(rel(reciprocal_gamma(1.5), 2.0 / PI.sqrt()) < 1e-15);
        assert!(reciprocal_gamma(175.0) > 0.0 && reciprocal_gamma(175.0) < 1e-300);
        assert_eq!(reciprocal_gamma(200.0), 0.0);
        assert!(reciprocal_gamma(-175.5).is_infinite() || reciprocal_gamma(-175.5).abs() > 1e300);
        let v = reciprocal_gamma(-60.5);
        assert!(rel(v, 1.0 / gamma(-60.5).unwrap()) < 1e-13);
    }

    #[test]
    fn half_integer_exact_values() {
        let g = gamma_half_exact(3).unwrap();
        assert_eq!(g.rational_part, ratio(1, 2));
        assert_eq!(g.sqrt_pi_power, 1);
        let g = gamma_half_exact(4).unwrap();
        assert_eq!((g.rational_part, g.sqrt_pi_power), (ratio(1, 1), 0));
        let g = gamma_half_exact(5).unwrap();
        assert_eq!((g.rational_part, g.sqrt_pi_power), (ratio(3, 4), 1));
        let g = gamma_half_exact(-1).unwrap();
        assert_eq!((g.rational_part, g.sqrt_pi_power), (ratio(-2, 1), 1));
        assert!(gamma_half_exact(0).is_err());
        assert!(gamma_half_exact(-4).is_err());
    }

    #[test]
    fn half_integer_exact_matches_float() {
        for two_x in -21..=120 {
            if two_x <= 0 && two_x % 2 == 0 {
                continue;
            }
            let exact = gamma_half_exact(two_x).unwrap().to_f64();
            let float = gamma(two_x as f64 / 2.0).unwrap();
            assert!(rel(exact, float) < 1e-13, "two_x={two_x}");
        }
    }

    #[test]
    fn integer_gamma_is_factorial() {
        for m in 0..=20u64 {
            let g = gamma_half_exact(2 * (m as i64 + 1)).unwrap();
            assert_eq!(g.sqrt_pi_power, 0);
            assert_eq!(g.rational_part, BigRational::from_integer(factorial(m)));
        }
    }

    #[test]
    fn pole_set() {
        assert!(GammaPoleSet::contains(0.0));
        assert!(GammaPoleSet::contains(-7.0));
        assert!(!GammaPoleSet::contains(-7.000000000001));
        assert!(!GammaPoleSet::contains(2.0));
        assert!(GammaPoleSet::contains_ratio(-6, 3));
        assert!(!GammaPoleSet::contains_ratio(-5, 3));
        assert!(GammaPoleSet::contains_rational(&ratio(-4, 2)));
    }

    #[test]
    fn sinpi_exact_at_integers() {
        assert_eq!(sinpi(3.0), 0.0);
        assert_eq!(sinpi(-0.5), -1.0);
        assert!((sinpi(1e6 + 0.25) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
