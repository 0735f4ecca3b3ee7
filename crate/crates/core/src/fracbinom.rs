//! Generalized binomial coefficients
//!
//! ```text
//!   [n k]_β = Γ(βn+1) / (Γ(βk+1) Γ(β(n−k)+1))
//! ```
//!
//! extended to every integer `k` by reading `1/Γ` as zero at its poles. The
//! β = 1/2 case has an exact route ([`binom_half_exact`], [`row_via_pascal`])
//! whose values are `rational · π^e` with `e ∈ {−1, 0}`, and most of the
//! combinatorial identities are checked on that exact route.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{classical_binomial, format_monomial, ratio, rational_to_f64, PiPoly};
use crate::gamma::{gamma, gamma_half_exact, ln_abs_gamma, reciprocal_gamma, GammaPoleSet};
use crate::hypergeom::gauss_at_one;

/// Γ arguments above this go through log space.
const LOG_SPACE_THRESHOLD: f64 = 170.0;

/// The order β > 0, kept as an exact fraction whenever the caller gave one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Beta {
    value: f64,
    // reduced p/q with q > 0
    exact: Option<(i64, i64)>,
}

impl Beta {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("β denominator is zero"));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        if p <= 0 {
            return Err(Error::domain(format!("β must be positive, got {p}/{q}")));
        }
        Ok(Beta {
            value: p as f64 / q as f64,
            exact: Some((p, q)),
        })
    }

    pub fn float(value: f64) -> Result<Self> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::domain(format!("β must be positive and finite, got {value}")));
        }
        Ok(Beta { value, exact: None })
    }

    pub fn half() -> Self {
        Beta {
            value: 0.5,
            exact: Some((1, 2)),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_ratio(&self) -> Option<(i64, i64)> {
        self.exact
    }

    pub fn is_half(&self) -> bool {
        match self.exact {
            Some(r) => r == (1, 2),
            None => self.value == 0.5,
        }
    }

    /// β·m, rounded once.
    pub fn times(&self, m: i64) -> f64 {
        match self.exact {
            Some((p, q)) => {
                let num = p as i128 * m as i128;
                if num % q as i128 == 0 {
                    (num / q as i128) as f64
                } else {
                    num as f64 / q as f64
                }
            }
            None => self.value * m as f64,
        }
    }

    /// Is βm + 1 a pole of Γ, i.e. βm ∈ {−1, −2, …}?
    pub fn shifted_pole(&self, m: i64) -> bool {
        match self.exact {
            Some((p, q)) => {
                let num = p as i128 * m as i128 + q as i128;
                GammaPoleSet::contains_ratio(num, q as i128)
            }
            None => GammaPoleSet::contains(self.value * m as f64 + 1.0),
        }
    }
}

impl From<f64> for Beta {
    /// Panics on a non-positive value; use [`Beta::float`] to handle that.
    fn from(value: f64) -> Self {
        Beta::float(value).expect("β must be positive")
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some((p, 1)) => write!(f, "{p}"),
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Beta {
    type Err = Error;

    /// Accepts `p/q`, plain decimals (`0.7` is taken as exactly 7/10) and
    /// anything else `f64` parses.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad β numerator in {s:?}")))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad β denominator in {s:?}")))?;
            return Beta::rational(p, q);
        }
        if let Some(r) = parse_decimal(s) {
            return Beta::rational(r.0, r.1);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::domain(format!("cannot parse β from {s:?}")))?;
        Beta::float(v)
    }
}

fn parse_decimal(s: &str) -> Option<(i64, i64)> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits_ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    if int.is_empty() && frac.is_empty() || !digits_ok(int) || !digits_ok(frac) || frac.len() > 17 {
        return None;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let whole: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let part: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some((whole.checked_mul(den)?.checked_add(part)?, den))
}

/// One coefficient request: `[n k]_β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaBinomialQuery {
    pub n: u32,
    pub k: i64,
    pub beta: Beta,
}

impl BetaBinomialQuery {
    pub fn new(n: u32, k: i64, beta: Beta) -> Self {
        BetaBinomialQuery { n, k, beta }
    }
}

/// Γ(a0)/(Γ(a1)Γ(a2)) with the lower poles already excluded.
fn gamma_ratio(a0: f64, a1: f64, a2: f64) -> Result<f64> {
    let largest = a0.abs().max(a1.abs()).max(a2.abs());
    if largest <= LOG_SPACE_THRESHOLD {
        return Ok(gamma(a0)? * reciprocal_gamma(a1) * reciprocal_gamma(a2));
    }
    let (l0, s0) = ln_abs_gamma(a0)?;
    let (l1, s1) = ln_abs_gamma(a1)?;
    let (l2, s2) = ln_abs_gamma(a2)?;
    let v = s0 * s1 * s2 * (l0 - l1 - l2).exp();
    if v.is_infinite() {
        return Err(Error::Overflow(format!(
            "Γ({a0})/(Γ({a1})Γ({a2})) exceeds the double range"
        )));
    }
    Ok(v)
}

/// `[n k]_β` in floating point.
pub fn binom_beta(q: &BetaBinomialQuery) -> Result<f64> {
    let BetaBinomialQuery { n, k, beta } = *q;
    let n = n as i64;
    if beta.shifted_pole(k) || beta.shifted_pole(n - k) {
        return Ok(0.0);
    }
    gamma_ratio(beta.times(n) + 1.0, beta.times(k) + 1.0, beta.times(n - k) + 1.0)
}

/// Shorthand for [`binom_beta`].
pub fn binom(n: u32, k: i64, beta: Beta) -> Result<f64> {
    binom_beta(&BetaBinomialQuery::new(n, k, beta))
}

/// An exact β = 1/2 coefficient, `q · π^pi_power` with `pi_power ∈ {−1, 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactHalfValue {
    q: BigRational,
    pi_power: i32,
}

impl ExactHalfValue {
    pub fn new(q: BigRational, pi_power: i32) -> Self {
        debug_assert!(pi_power == 0 || pi_power == -1, "π power {pi_power}");
        if q.is_zero() {
            return ExactHalfValue::zero();
        }
        ExactHalfValue { q, pi_power }
    }

    pub fn zero() -> Self {
        ExactHalfValue {
            q: BigRational::zero(),
            pi_power: 0,
        }
    }

    pub fn rational(q: BigRational) -> Self {
        ExactHalfValue::new(q, 0)
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let v = rational_to_f64(&self.q);
        if self.pi_power == -1 {
            v / std::f64::consts::PI
        } else {
            v
        }
    }

    pub fn to_pipoly(&self) -> PiPoly {
        PiPoly::monomial(self.q.clone(), self.pi_power)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        ExactHalfValue::new(&self.q * factor, self.pi_power)
    }

    /// Sum of two values known to share their power of π (or be zero).
    pub fn add_like(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.pi_power, other.pi_power,
            "adding coefficients with different powers of π"
        );
        ExactHalfValue::new(&self.q + &other.q, self.pi_power)
    }
}

impl fmt::Display for ExactHalfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}", format_monomial(&self.q, self.pi_power))
        }
    }
}

// memo bounds for the exact coefficients
const MEMO_MAX_N: u32 = 512;
const MEMO_MAX_K: i64 = 1024;

type ExactMemo = RwLock<HashMap<(u32, i64), ExactHalfValue>>;

fn exact_memo() -> &'static ExactMemo {
    static MEMO: OnceLock<ExactMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact `[n k]_{1/2}`.
pub fn binom_half_exact(n: u32, k: i64) -> ExactHalfValue {
    if n > MEMO_MAX_N || k.abs() > MEMO_MAX_K {
        return binom_half_exact_uncached(n, k);
    }
    if let Some(v) = exact_memo().read().ok().and_then(|m| m.get(&(n, k)).cloned()) {
        return v;
    }
    let v = binom_half_exact_uncached(n, k);
    if let Ok(mut m) = exact_memo().write() {
        m.insert((n, k), v.clone());
    }
    v
}

fn binom_half_exact_uncached(n: u32, k: i64) -> ExactHalfValue {
    let n = n as i64;
    let rest = n - k;
    let lower_pole = |m: i64| m <= -2 && m % 2 == 0;
    if lower_pole(k) || lower_pole(rest) {
        return ExactHalfValue::zero();
    }
    // Γ(n/2 + 1) / (Γ(k/2 + 1) Γ((n−k)/2 + 1))
    let top = gamma_half_exact(n + 2).expect("n/2 + 1 > 0");
    let d1 = gamma_half_exact(k + 2).expect("pole excluded above");
    let d2 = gamma_half_exact(rest + 2).expect("pole excluded above");
    let sqrt_pi = top.sqrt_pi_power as i32 - d1.sqrt_pi_power as i32 - d2.sqrt_pi_power as i32;
    debug_assert!(sqrt_pi == 0 || sqrt_pi == -2);
    let q = top.rational_part / (d1.rational_part * d2.rational_part);
    ExactHalfValue::new(q, sqrt_pi / 2)
}

/// A contiguous run of exact coefficients `[n k]` for `k ∈ [k_min, k_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSlice {
    pub n: u32,
    pub k_min: i64,
    pub k_max: i64,
    pub values: Vec<ExactHalfValue>,
}

impl RowSlice {
    pub fn get(&self, k: i64) -> Option<&ExactHalfValue> {
        if k < self.k_min || k > self.k_max {
            return None;
        }
        self.values.get((k - self.k_min) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ExactHalfValue)> {
        (self.k_min..=self.k_max).zip(self.values.iter())
    }
}

fn two_over_pi(q: BigRational) -> ExactHalfValue {
    ExactHalfValue::new(q * BigRational::from_integer(BigInt::from(2)), -1)
}

/// `[0 j]` for j ≥ −1.
fn seed_row_zero(j: i64) -> ExactHalfValue {
    match j {
        -1 => two_over_pi(BigRational::one()),
        0 => ExactHalfValue::rational(BigRational::one()),
        j if j % 2 == 0 => ExactHalfValue::zero(),
        j => {
            // j = 2i + 1: (2/π)(−1)^i / (2i+1)
            let i = (j - 1) / 2;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            two_over_pi(ratio(sign, j))
        }
    }
}

/// `[1 j]` for j ≥ −1.
fn seed_row_one(j: i64) -> ExactHalfValue {
    let even_entry = |i: i64| {
        // [1 2i] = (−1)^{i+1}/(2i−1) · C(2i,i)/4^i
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        let c = BigRational::new(
            classical_binomial(2 * i as u64, i as u64),
            BigInt::from(4).pow(i as u32),
        );
        ExactHalfValue::rational(c * ratio(sign, 2 * i - 1))
    };
    match j {
        // reflection: [1 −1] = [1 2]
        -1 => even_entry(1),
        1 => ExactHalfValue::rational(BigRational::one()),
        j if j % 2 != 0 => ExactHalfValue::zero(),
        j => even_entry(j / 2),
    }
}

/// Row `n` of the β = 1/2 coefficients built only from rows 0 and 1 with the
/// step-two Pascal rule, plus the downward recursion for negative `k`.
pub fn row_via_pascal(n: u32, k_min: i64, k_max: i64) -> Result<RowSlice> {
    if k_min > k_max {
        return Err(Error::domain(format!("empty k-range [{k_min}, {k_max}]")));
    }
    let top = k_max.max(1);
    // row[j + 1] = [m j] for j ∈ [−1, top]
    let base = (n % 2) as i64;
    let seed = if base == 0 { seed_row_zero } else { seed_row_one };
    let mut row: Vec<ExactHalfValue> = (-1..=top).map(seed).collect();
    let mut m = base;
    while m < n as i64 {
        let mut next = Vec::with_capacity(row.len());
        next.push(ExactHalfValue::zero()); // placeholder for j = −1
        next.push(ExactHalfValue::rational(BigRational::one()));
        for j in 1..=top {
            let idx = (j + 1) as usize;
            next.push(row[idx - 2].add_like(&row[idx]));
        }
        m += 2;
        // [m −1] = [m 1] / (m + 1)
        next[0] = next[2].scale(&ratio(1, m + 1));
        row = next;
    }

    let n_i = n as i64;
    let mut below: Vec<ExactHalfValue> = Vec::new(); // [n j] for j = −2, −3, …
    let value_at = |k: i64, below: &mut Vec<ExactHalfValue>| -> ExactHalfValue {
        if k >= -1 {
            return row[(k + 1) as usize].clone();
        }
        while below.len() < (-1 - k) as usize {
            let j = -2 - below.len() as i64;
            let above = if j + 2 >= -1 {
                row[(j + 3) as usize].clone()
            } else {
                below[below.len() - 2].clone()
            };
            // [n j] = (j+2)/(n−j) · [n j+2]
            below.push(above.scale(&ratio(j + 2, n_i - j)));
        }
        below[(-2 - k) as usize].clone()
    };
    let values = (k_min..=k_max).map(|k| value_at(k, &mut below)).collect();
    Ok(RowSlice {
        n,
        k_min,
        k_max,
        values,
    })
}

/// The identities the coefficients satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// [n k] = [n n−k], any β.
    Reflection,
    /// [n h][n−h k] = [n k][n−k h], any β, h, k ≤ n.
    Cancellation,
    /// [n n] = 1, any β.
    Boundary,
    /// [n+2 k+2] = (n+2)/(k+2) [n k], k ≥ −1.
    CommitteeChair,
    /// [n k+2] = (n−k)/(k+2) [n k], k ≥ −1.
    Recursion,
    /// [n k+2] − [n k] = (n−2−2k)/(n+2) [n+2 k+2], k ≥ −1.
    Difference,
    /// [n k] + [n k+2] = [n+2 k+2], k ≥ −1.
    Pascal,
    /// [n 2] + [n−2 2] = n − 1, n ≥ 2.
    ASum,
    /// [2n 2k] = C(n, k).
    EvenEven,
    /// [n 2] = n/2.
    KTwo,
    /// [n −1] = [n 1]/(n+1).
    MinusOne,
    /// [2m 1] = 2^{2m+1}/(π C(2m,m)) and [2m+1 1] = (2m+1) C(2m,m)/2^{2m}.
    KOneExplicit,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Reflection,
        Identity::Cancellation,
        Identity::Boundary,
        Identity::CommitteeChair,
        Identity::Recursion,
        Identity::Difference,
        Identity::Pascal,
        Identity::ASum,
        Identity::EvenEven,
        Identity::KTwo,
        Identity::MinusOne,
        Identity::KOneExplicit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Reflection => "reflection",
            Identity::Cancellation => "cancellation",
            Identity::Boundary => "boundary",
            Identity::CommitteeChair => "committee_chair",
            Identity::Recursion => "recursion",
            Identity::Difference => "difference",
            Identity::Pascal => "pascal",
            Identity::ASum => "a_sum",
            Identity::EvenEven => "even_even",
            Identity::KTwo => "k_two",
            Identity::MinusOne => "minus_one",
            Identity::KOneExplicit => "k_one_explicit",
        }
    }

    /// Holds for every β > 0, not only β = 1/2.
    pub fn is_general_beta(&self) -> bool {
        matches!(self, Identity::Reflection | Identity::Cancellation | Identity::Boundary)
    }

    fn check_domain(&self, n: u32, k: i64, h: i64) -> Result<()> {
        let n = n as i64;
        let fail = |why: &str| Err(Error::domain(format!("{}: {why}", self.name())));
        match self {
            Identity::CommitteeChair | Identity::Recursion | Identity::Difference | Identity::Pascal if k < -1 => {
                fail("requires k ≥ −1")
            }
            Identity::Cancellation if h > n || k > n => fail("requires h, k ≤ n"),
            Identity::ASum if n < 2 => fail("requires n ≥ 2"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Identity::ALL
            .into_iter()
            .find(|id| {
                id.name() == key
                    || (key == "rec1" && *id == Identity::CommitteeChair)
                    || (key == "rec2" && *id == Identity::Recursion)
            })
            .ok_or_else(|| Error::domain(format!("unknown identity {s:?}")))
    }
}

/// Both sides of an identity, evaluated in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub lhs: f64,
    pub rhs: f64,
}

impl Residual {
    pub fn absolute(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn relative(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            self.absolute() / scale
        }
    }
}

/// Evaluates both sides of `id` at (n, k, h) in floating point.
///
/// `h` is used only by the cancellation identity.
pub fn identity_residual(id: Identity, n: u32, k: i64, h: i64, beta: Beta) -> Result<Residual> {
    id.check_domain(n, k, h)?;
    if !id.is_general_beta() && !beta.is_half() {
        return Err(Error::domain(format!("{id} holds only for β = 1/2")));
    }
    let b = |n: i64, k: i64| -> Result<f64> {
        if n < 0 {
            return Err(Error::domain("negative upper index"));
        }
        binom(n as u32, k, beta)
    };
    let ni = n as i64;
    let nf = ni as f64;
    let kf = k as f64;
    let (lhs, rhs) = match id {
        Identity::Reflection => (b(ni, k)?, b(ni, ni - k)?),
        Identity::Cancellation => (b(ni, h)? * b(ni - h, k)?, b(ni, k)? * b(ni - k, h)?),
        Identity::Boundary => (b(ni, ni)?, 1.0),
        Identity::CommitteeChair => (b(ni + 2, k + 2)?, (nf + 2.0) / (kf + 2.0) * b(ni, k)?),
        Identity::Recursion => (b(ni, k + 2)?, (nf - kf) / (kf + 2.0) * b(ni, k)?),
        Identity::Difference => (
            b(ni, k + 2)? - b(ni, k)?,
            (nf - 2.0 - 2.0 * kf) / (nf + 2.0) * b(ni + 2, k + 2)?,
        ),
        Identity::Pascal => (b(ni, k)? + b(ni, k + 2)?, b(ni + 2, k + 2)?),
        Identity::ASum => (b(ni, 2)? + b(ni - 2, 2)?, nf - 1.0),
        Identity::EvenEven => (b(2 * ni, 2 * k)?, classical_binomial_f64(ni, k)),
        Identity::KTwo => (b(ni, 2)?, nf / 2.0),
        Identity::MinusOne => (b(ni, -1)?, b(ni, 1)? / (nf + 1.0)),
        Identity::KOneExplicit => (b(ni, 1)?, k_one_explicit(n).to_f64()),
    };
    Ok(Residual { lhs, rhs })
}

fn classical_binomial_f64(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    rational_to_f64(&BigRational::from_integer(classical_binomial(n as u64, k as u64)))
}

/// The explicit parity-split formulas for `[n 1]`.
pub fn k_one_explicit(n: u32) -> ExactHalfValue {
    let m = (n / 2) as u64;
    let c = classical_binomial(2 * m, m);
    let four_m = BigInt::from(4).pow(m as u32);
    if n.is_multiple_of(2) {
        ExactHalfValue::new(BigRational::new(BigInt::from(2) * four_m, c), -1)
    } else {
        ExactHalfValue::rational(BigRational::new(BigInt::from(2 * m + 1) * c, four_m))
    }
}

/// LHS − RHS of `id` at β = 1/2 in exact arithmetic.
pub fn identity_residual_exact(id: Identity, n: u32, k: i64, h: i64) -> Result<PiPoly> {
    id.check_domain(n, k, h)?;
    let b = |n: i64, k: i64| -> PiPoly { binom_half_exact(n as u32, k).to_pipoly() };
    let r = |p: i64, q: i64| ratio(p, q);
    let ni = n as i64;
    let (lhs, rhs) = match id {
        Identity::Reflection => (b(ni, k), b(ni, ni - k)),
        Identity::Cancellation => (&b(ni, h) * &b(ni - h, k), &b(ni, k) * &b(ni - k, h)),
        Identity::Boundary => (b(ni, ni), PiPoly::one()),
        Identity::CommitteeChair => (b(ni + 2, k + 2), b(ni, k).scale(&r(ni + 2, k + 2))),
        Identity::Recursion => (b(ni, k + 2), b(ni, k).scale(&r(ni - k, k + 2))),
        Identity::Difference => (
            &b(ni, k + 2) - &b(ni, k),
            b(ni + 2, k + 2).scale(&r(ni - 2 - 2 * k, ni + 2)),
        ),
        Identity::Pascal => (&b(ni, k) + &b(ni, k + 2), b(ni + 2, k + 2)),
        Identity::ASum => (&b(ni, 2) + &b(ni - 2, 2), PiPoly::integer(ni - 1)),
        Identity::EvenEven => {
            let c = if k < 0 || k > ni {
                BigInt::zero()
            } else {
                classical_binomial(ni as u64, k as u64)
            };
            (b(2 * ni, 2 * k), PiPoly::rational(BigRational::from_integer(c)))
        }
        Identity::KTwo => (b(ni, 2), PiPoly::rational(r(ni, 2))),
        Identity::MinusOne => (b(ni, -1), b(ni, 1).scale(&r(1, ni + 1))),
        Identity::KOneExplicit => (b(ni, 1), k_one_explicit(n).to_pipoly()),
    };
    Ok(&lhs - &rhs)
}

/// The continuous binomial Γ(y+1)/(Γ(x+1)Γ(y−x+1)), with the zero extension
/// when both `x` and `y − x` are negative integers.
pub fn binom_continuous(y: f64, x: f64) -> Result<f64> {
    if y.is_nan() || x.is_nan() {
        return Err(Error::domain("binomial of NaN"));
    }
    let lower_a = x + 1.0;
    let lower_b = y - x + 1.0;
    let pole_a = GammaPoleSet::contains(lower_a);
    let pole_b = GammaPoleSet::contains(lower_b);
    if GammaPoleSet::contains(y + 1.0) {
        if pole_a && pole_b {
            return Ok(0.0);
        }
        return Err(Error::domain(format!(
            "binom({y}, {x}): upper argument is a negative integer and the zero extension does not apply"
        )));
    }
    if pole_a || pole_b {
        return Ok(0.0);
    }
    gamma_ratio(y + 1.0, lower_a, lower_b)
}

/// `[n k]_β` through Gauss's summation ₂F₁(−βk, −β(n−k); 1; 1).
pub fn binom_via_gauss(n: u32, k: i64, beta: Beta) -> Result<f64> {
    let a = -beta.times(k);
    let b = -beta.times(n as i64 - k);
    gauss_at_one(a, b, 1.0)
}
