//! Exact sums of rational multiples of integer powers of π.
//!
//! Every β = 1/2 coefficient is `q · π^e` with `e ∈ {−1, 0}`; sums of them
//! (partial sums, identity sides) mix the two powers and products of them can
//! reach `π^{−2}`. [`PiPoly`] is the closure of that arithmetic: a finite
//! Laurent polynomial in π with arbitrary-precision rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiPoly {
    // exponent of π -> nonzero coefficient
    terms: BTreeMap<i32, BigRational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly::default()
    }

    pub fn one() -> Self {
        PiPoly::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        PiPoly::monomial(q, 0)
    }

    pub fn integer(n: i64) -> Self {
        PiPoly::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `q · π^pi_power`
    pub fn monomial(q: BigRational, pi_power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(pi_power, q);
        }
        PiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `π^pi_power` (zero when absent).
    pub fn coefficient(&self, pi_power: i32) -> BigRational {
        self.terms.get(&pi_power).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(e, q)| (*e, q))
    }

    /// `Some((q, e))` when the value is a single monomial (zero gives `(0, 0)`).
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        match self.terms.len() {
            0 => Some((BigRational::zero(), 0)),
            1 => self.terms.iter().next().map(|(e, q)| (q.clone(), *e)),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return PiPoly::zero();
        }
        PiPoly {
            terms: self.terms.iter().map(|(e, q)| (*e, q * factor)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(e, q)| rational_to_f64(q) * std::f64::consts::PI.powi(*e))
            .sum()
    }

    fn insert_add(&mut self, e: i32, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p/q`, `p/q/pi`, `p/q/pi^2`, `p/q*pi` for a monomial.
pub fn format_monomial(q: &BigRational, pi_power: i32) -> String {
    let base = format_rational(q);
    match pi_power {
        0 => base,
        -1 => format!("{base}/pi"),
        1 => format!("{base}*pi"),
        e if e < 0 => format!("{base}/pi^{}", -e),
        e => format!("{base}*pi^{e}"),
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest power of π first: "2+4/pi"
        for (i, (e, q)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                write!(f, "{}", format_monomial(q, *e))?;
            } else if q.is_negative() {
                write!(f, "-{}", format_monomial(&-q, *e))?;
            } else {
                write!(f, "+{}", format_monomial(q, *e))?;
            }
        }
        Ok(())
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(mut self, rhs: PiPoly) -> PiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&PiPoly> for PiPoly {
    fn add_assign(&mut self, rhs: &PiPoly) {
        for (e, q) in &rhs.terms {
            self.insert_add(*e, q);
        }
    }
}

impl AddAssign for PiPoly {
    fn add_assign(&mut self, rhs: PiPoly) {
        *self += &rhs;
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly {
            terms: self.terms.into_iter().map(|(e, q)| (e, -q)).collect(),
        }
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -(self.clone())
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        let mut out = self.clone();
        for (e, q) in &rhs.terms {
            out.insert_add(*e, &-q);
        }
        out
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        &self - &rhs
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (ea, qa) in &self.terms {
            for (eb, qb) in &rhs.terms {
                out.insert_add(ea + eb, &(qa * qb));
            }
        }
        out
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for PiPoly {
    fn sum<I: Iterator<Item = PiPoly>>(iter: I) -> PiPoly {
        let mut acc = PiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Shorthand for the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn central_binomial(k: u64) -> BigInt {
    classical_binomial(2 * k, k)
}

pub fn classical_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = PiPoly::monomial(ratio(4, 1), -1);
        let b = PiPoly::monomial(ratio(-4, 1), -1);
        assert!((&a + &b).is_zero());
        assert_eq!((&a - &a).to_string(), "0");
    }

    #[test]
    fn display_forms() {
        assert_eq!(PiPoly::monomial(ratio(4, 1), -1).to_string(), "4/pi");
        assert_eq!(PiPoly::monomial(ratio(4, 3), -1).to_string(), "4/3/pi");
        assert_eq!(PiPoly::integer(0).to_string(), "0");
        let mixed = PiPoly::integer(2) + PiPoly::monomial(ratio(4, 1), -1);
        assert_eq!(mixed.to_string(), "2+4/pi");
        let neg = PiPoly::integer(2) - PiPoly::monomial(ratio(1, 3), -1);
        assert_eq!(neg.to_string(), "2-1/3/pi");
    }

    #[test]
    fn product_adds_exponents() {
        let a = PiPoly::monomial(ratio(2, 1), -1);
        let p = &a * &a;
        assert_eq!(p.as_monomial(), Some((ratio(4, 1), -2)));
    }

    #[test]
    fn binomials() {
        assert_eq!(classical_binomial(8, 4), BigInt::from(70));
        assert_eq!(central_binomial(3), BigInt::from(20));
        assert_eq!(classical_binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
