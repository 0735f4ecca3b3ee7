//! Finite partial sums `φ̄_n(t) = Σ_{k=0}^n [n k] t^k` at β = 1/2, the row
//! sums `φ̄_n(1)` and the finite-sum identities that come with them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{classical_binomial, ratio, rational_from_f64, PiPoly};
use crate::fracbinom::binom_half_exact;
use crate::genfunc::{central_ratios, inverse_central_ratios};
use crate::quad::{integrate, QuadraturePolicy};
use crate::series::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialSumRoute {
    Direct,
    Recursive,
    Closed,
    Integral,
}

impl PartialSumRoute {
    pub const ALL: [PartialSumRoute; 4] = [
        PartialSumRoute::Direct,
        PartialSumRoute::Recursive,
        PartialSumRoute::Closed,
        PartialSumRoute::Integral,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PartialSumRoute::Direct => "direct",
            PartialSumRoute::Recursive => "recursive",
            PartialSumRoute::Closed => "closed",
            PartialSumRoute::Integral => "integral",
        }
    }
}

impl fmt::Display for PartialSumRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartialSumRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        PartialSumRoute::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| Error::domain(format!("unknown route {s:?}")))
    }
}

/// One evaluation of `φ̄_n(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSumPoint {
    pub n: u32,
    pub t: f64,
    pub value: f64,
    pub route: PartialSumRoute,
}

/// Memoized harmonic numbers `H_n` as exact rationals; grows on demand.
#[derive(Debug)]
pub struct HarmonicCache {
    // values[i] = H_i
    values: RwLock<Vec<BigRational>>,
}

impl Default for HarmonicCache {
    fn default() -> Self {
        HarmonicCache {
            values: RwLock::new(vec![BigRational::zero()]),
        }
    }
}

impl HarmonicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize) -> BigRational {
        {
            let values = self.values.read().expect("harmonic cache poisoned");
            if let Some(h) = values.get(n) {
                return h.clone();
            }
        }
        let mut values = self.values.write().expect("harmonic cache poisoned");
        while values.len() <= n {
            let i = values.len();
            let next = &values[i - 1] + ratio(1, i as i64);
            values.push(next);
        }
        values[n].clone()
    }

    pub fn len(&self) -> usize {
        self.values.read().expect("harmonic cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `H_n` from a process-wide cache.
pub fn harmonic(n: usize) -> BigRational {
    static CACHE: OnceLock<HarmonicCache> = OnceLock::new();
    CACHE.get_or_init(HarmonicCache::new).get(n)
}

/// `φ̄_n(t)` for rational `t`, exactly.
pub fn phibar_exact(n: u32, t: &BigRational) -> PiPoly {
    let mut power = BigRational::one();
    let mut acc = PiPoly::zero();
    for k in 0..=n as i64 {
        acc += binom_half_exact(n, k).to_pipoly().scale(&power);
        power *= t;
    }
    acc
}

/// `φ̄_n(t)` summed termwise in exact arithmetic and rounded once.
pub fn phibar_direct(n: u32, t: f64) -> f64 {
    match rational_from_f64(t) {
        Some(q) => phibar_exact(n, &q).to_f64(),
        None => (0..=n as i64)
            .map(|k| binom_half_exact(n, k).to_f64() * t.powi(k as i32))
            .sum(),
    }
}

fn minus_one_coefficient(m: u32) -> f64 {
    binom_half_exact(m, -1).to_f64()
}

/// `φ̄_{n+2} = (1+t²) φ̄_n + [n −1](t^{n+1} + t)` from `φ̄_0 = 1`, `φ̄_1 = 1 + t`.
pub fn phibar_recursive(n: u32, t: f64) -> f64 {
    let (mut m, mut value) = if n.is_multiple_of(2) {
        (0u32, 1.0)
    } else {
        (1u32, 1.0 + t)
    };
    let s = t.mul_add(t, 1.0);
    while m < n {
        value = s * value + minus_one_coefficient(m) * (t.powi(m as i32 + 1) + t);
        m += 2;
    }
    value
}

/// The finite closed forms, split by the parity of `n`.
pub fn phibar_closed(n: u32, t: f64) -> f64 {
    let m = (n / 2) as usize;
    let s = t.mul_add(t, 1.0);
    let mut acc = CompensatedSum::new();
    if n.is_multiple_of(2) {
        let g = inverse_central_ratios(m);
        let mut p = 1.0;
        for (k, gk) in g.iter().enumerate().skip(1) {
            p /= s;
            acc.add(gk / k as f64 * (t.powi(2 * k as i32 - 1) + t) * p);
        }
        s.powi(m as i32) * (1.0 + acc.value() / PI)
    } else {
        let b = central_ratios(m);
        let mut p = 1.0;
        for (k, bk) in b.iter().enumerate() {
            acc.add(bk * (t.powi(2 * k as i32) + t) * p);
            p /= s;
        }
        s.powi(m as i32) * acc.value()
    }
}

/// `(1+t²)^{n/2} (1 − [n 1] ∫₀ᵗ (sⁿ − 1)/(1+s²)^{n/2+1} ds)`.
pub fn phibar_integral(n: u32, t: f64, qp: &QuadraturePolicy) -> Result<f64> {
    qp.validate()?;
    if !t.is_finite() {
        return Err(Error::domain("φ̄_n integral at non-finite t"));
    }
    let half = n as f64 / 2.0;
    let out = integrate(
        |s| (s.powi(n as i32) - 1.0) * s.mul_add(s, 1.0).powf(-(half + 1.0)),
        0.0,
        t,
        qp,
    )?;
    let c1 = binom_half_exact(n, 1).to_f64();
    Ok(t.mul_add(t, 1.0).powf(half) * (1.0 - c1 * out.value))
}

pub fn phibar(n: u32, t: f64, route: PartialSumRoute) -> Result<PartialSumPoint> {
    let value = match route {
        PartialSumRoute::Direct => phibar_direct(n, t),
        PartialSumRoute::Recursive => phibar_recursive(n, t),
        PartialSumRoute::Closed => phibar_closed(n, t),
        PartialSumRoute::Integral => phibar_integral(n, t, &QuadraturePolicy::default())?,
    };
    Ok(PartialSumPoint { n, t, value, route })
}

fn pow2(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(2).pow(e))
}

fn inverse_pi(q: BigRational) -> PiPoly {
    PiPoly::monomial(q, -1)
}

/// `φ̄_n(1)` in exact arithmetic by the parity-split closed sums.
pub fn row_sum_exact(n: u32) -> PiPoly {
    let m = n / 2;
    if n.is_multiple_of(2) {
        // 2^m (1 + (2/π) Σ_{k=1}^m 2^k / (k C(2k,k)))
        let mut inner = BigRational::zero();
        for k in 1..=m as u64 {
            inner += BigRational::new(
                BigInt::from(2).pow(k as u32),
                BigInt::from(k) * classical_binomial(2 * k, k),
            );
        }
        let scale = pow2(m);
        PiPoly::rational(scale.clone()) + inverse_pi(scale * BigRational::from_integer(BigInt::from(2)) * inner)
    } else {
        // 2^{m+1} Σ_{k=0}^m C(2k,k) / 8^k
        let mut inner = BigRational::zero();
        for k in 0..=m as u64 {
            inner += BigRational::new(classical_binomial(2 * k, k), BigInt::from(8).pow(k as u32));
        }
        PiPoly::rational(pow2(m + 1) * inner)
    }
}

/// `φ̄_n(1)` rounded from [`row_sum_exact`].
pub fn row_sum(n: u32) -> f64 {
    row_sum_exact(n).to_f64()
}

/// The finite-sum identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumId {
    /// Σ_{k<n} [2k 1]/(2k+1) = [2n 1] − 2/π
    S1,
    /// Σ_{k<n} [2k+1 1]/(2k+2) = [2n+1 1] − 1
    S2,
    /// Σ_{k≤n} [k 2] = n(n+1)/4
    S3,
    /// Σ_{1≤k≤n} [k 2]/k = n/2
    S4,
    /// Σ_{k≤n} [k 2]/(k+1) = (n+1)/2 − H_{n+1}/2
    S5,
}

impl SumId {
    pub const ALL: [SumId; 5] = [SumId::S1, SumId::S2, SumId::S3, SumId::S4, SumId::S5];

    pub fn name(&self) -> &'static str {
        match self {
            SumId::S1 => "s1",
            SumId::S2 => "s2",
            SumId::S3 => "s3",
            SumId::S4 => "s4",
            SumId::S5 => "s5",
        }
    }
}

impl fmt::Display for SumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SumId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        SumId::ALL
            .into_iter()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::domain(format!("unknown finite sum {s:?}")))
    }
}

/// Both sides of a finite-sum identity, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSum {
    pub lhs: PiPoly,
    pub rhs: PiPoly,
}

impl FiniteSum {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn b(n: u32, k: i64) -> PiPoly {
    binom_half_exact(n, k).to_pipoly()
}

fn sum_over<I: IntoIterator<Item = PiPoly>>(items: I) -> PiPoly {
    items.into_iter().sum()
}

fn half_int(num: i64, den: i64) -> PiPoly {
    PiPoly::rational(ratio(num, den))
}

/// The closed-form side of a finite-sum identity.
pub fn finite_sum_rhs(id: SumId, n: u32) -> PiPoly {
    let ni = n as i64;
    match id {
        SumId::S1 => &b(2 * n, 1) - &inverse_pi(ratio(2, 1)),
        SumId::S2 => &b(2 * n + 1, 1) - &PiPoly::one(),
        SumId::S3 => half_int(ni * (ni + 1), 4),
        SumId::S4 => half_int(ni, 2),
        SumId::S5 => PiPoly::rational(ratio(ni + 1, 2) - harmonic(n as usize + 1) * ratio(1, 2)),
    }
}

pub fn finite_sum(id: SumId, n: u32) -> Result<FiniteSum> {
    finite_sum_range(id, n, n).map(|mut v| v.remove(0))
}

/// `finite_sum(id, n)` for every n in `n_min..=n_max`, built incrementally.
pub fn finite_sum_range(id: SumId, n_min: u32, n_max: u32) -> Result<Vec<FiniteSum>> {
    if n_min > n_max {
        return Err(Error::domain(format!("empty range {n_min}..={n_max}")));
    }
    if id == SumId::S4 && n_min == 0 {
        return Err(Error::domain("s4 requires n ≥ 1"));
    }
    let term = |k: u32| -> PiPoly {
        match id {
            SumId::S1 => b(2 * k, 1).scale(&ratio(1, 2 * k as i64 + 1)),
            SumId::S2 => b(2 * k + 1, 1).scale(&ratio(1, 2 * k as i64 + 2)),
            SumId::S3 => b(k, 2),
            SumId::S4 => b(k, 2).scale(&ratio(1, k as i64)),
            SumId::S5 => b(k, 2).scale(&ratio(1, k as i64 + 1)),
        }
    };
    // S1, S2 sum k < n; S3, S5 sum k ≤ n; S4 sums 1 ≤ k ≤ n
    let (first, upper_inclusive) = match id {
        SumId::S1 | SumId::S2 => (0, false),
        SumId::S3 | SumId::S5 => (0, true),
        SumId::S4 => (1, true),
    };
    let mut lhs = PiPoly::zero();
    let mut next = first;
    let mut out = Vec::with_capacity((n_max - n_min + 1) as usize);
    for n in n_min..=n_max {
        let stop = if upper_inclusive { n + 1 } else { n };
        while next < stop {
            lhs += term(next);
            next += 1;
        }
        out.push(FiniteSum {
            lhs: lhs.clone(),
            rhs: finite_sum_rhs(id, n),
        });
    }
    Ok(out)
}

/// One row of equivalent formulations for a sum involving `φ_n(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub name: &'static str,
    pub sum: PiPoly,
    pub formulations: Vec<PiPoly>,
}

impl TableRow {
    /// Largest |formulation − sum| after rounding; zero when all agree exactly.
    pub fn max_float_gap(&self) -> f64 {
        self.formulations
            .iter()
            .map(|f| (f - &self.sum).to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn all_exact(&self) -> bool {
        self.formulations.iter().all(|f| *f == self.sum)
    }
}

/// The seven rows of equivalent formulations at index `n`.
pub fn table_identities(n: u32) -> Vec<TableRow> {
    let ni = n as i64;
    let nu = n as u64;
    let two_n = pow2(n);
    let two_over_pi = inverse_pi(ratio(2, 1));
    let inv_pow2 = |k: u32| BigRational::new(BigInt::one(), BigInt::from(2).pow(k));

    let even_sum = sum_over((0..=2 * ni).map(|k| b(2 * n, k)));
    let even_a = {
        let inner: BigRational = (1..=nu)
            .map(|k| {
                BigRational::new(
                    BigInt::from(2).pow(k as u32),
                    BigInt::from(k) * classical_binomial(2 * k, k),
                )
            })
            .sum();
        (PiPoly::one() + inverse_pi(inner * ratio(2, 1))).scale(&two_n)
    };
    let even_b = (PiPoly::one() + sum_over((0..n).map(|k| b(2 * k, -1).scale(&inv_pow2(k))))).scale(&two_n);
    let even_c = (PiPoly::one()
        + sum_over((0..n).map(|k| b(2 * k, 1).scale(&(ratio(1, 2 * k as i64 + 1) * inv_pow2(k))))))
    .scale(&two_n);

    let odd_sum = sum_over((0..=2 * ni + 1).map(|k| b(2 * n + 1, k)));
    let odd_a = {
        let inner: BigRational = (0..=nu)
            .map(|k| BigRational::new(classical_binomial(2 * k, k), BigInt::from(8).pow(k as u32)))
            .sum();
        PiPoly::rational(inner * pow2(n + 1))
    };
    let two = PiPoly::integer(2);
    let odd_b = (&two + &sum_over((0..n).map(|k| b(2 * k + 1, -1).scale(&inv_pow2(k))))).scale(&two_n);
    let odd_c = (&two + &sum_over((0..n).map(|k| b(2 * k + 1, 1).scale(&(ratio(1, 2 * k as i64 + 2) * inv_pow2(k))))))
        .scale(&two_n);

    let s1 = finite_sum(SumId::S1, n).expect("s1 is defined for every n");
    let s1_a = inverse_pi(
        (1..=nu)
            .map(|k| {
                BigRational::new(
                    BigInt::from(4).pow(k as u32),
                    BigInt::from(k) * classical_binomial(2 * k, k),
                )
            })
            .sum(),
    );
    let s1_b = &inverse_pi(BigRational::new(
        BigInt::from(2).pow(2 * n + 1),
        classical_binomial(2 * nu, nu),
    )) - &two_over_pi;

    let s2 = finite_sum(SumId::S2, n).expect("s2 is defined for every n");
    let s2_a = PiPoly::rational(
        (1..=nu)
            .map(|k| BigRational::new(classical_binomial(2 * k, k), BigInt::from(4).pow(k as u32)))
            .sum(),
    );
    let s2_b = PiPoly::rational(
        BigRational::new(
            BigInt::from(2 * nu + 1) * classical_binomial(2 * nu, nu),
            BigInt::from(4).pow(n),
        ) - BigRational::one(),
    );

    let s3 = finite_sum(SumId::S3, n).expect("s3 is defined for every n");
    let s3_a = PiPoly::rational((0..=ni).map(|k| ratio(k, 2)).sum());
    let s3_c = &b(n, 2) * &b(n + 1, 2);

    let s4_lhs = sum_over((1..=n).map(|k| b(k, 2).scale(&ratio(1, k as i64))));
    let s4_a = PiPoly::rational((1..=ni).map(|_| ratio(1, 2)).sum());

    let s5 = finite_sum(SumId::S5, n).expect("s5 is defined for every n");
    let s5_a = PiPoly::rational((0..=ni).map(|k| ratio(k, 2 * (k + 1))).sum());

    vec![
        TableRow {
            name: "even_row_sum",
            sum: even_sum,
            formulations: vec![even_a, even_b, even_c],
        },
        TableRow {
            name: "odd_row_sum",
            sum: odd_sum,
            formulations: vec![odd_a, odd_b, odd_c],
        },
        TableRow {
            name: "s1",
            sum: s1.lhs,
            formulations: vec![s1_a, s1_b, s1.rhs],
        },
        TableRow {
            name: "s2",
            sum: s2.lhs,
            formulations: vec![s2_a, s2_b, s2.rhs],
        },
        TableRow {
            name: "s3",
            sum: s3.lhs,
            formulations: vec![s3_a, s3.rhs, s3_c],
        },
        TableRow {
            name: "s4",
            sum: s4_lhs,
            formulations: vec![s4_a, half_int(ni, 2), b(n, 2)],
        },
        TableRow {
            name: "s5",
            sum: s5.lhs,
            formulations: vec![s5_a, s5.rhs],
        },
    ]
}
