//! The generating functions `φ_n(t) = Σ_{k≥0} [n k] t^k` at β = 1/2.
//!
//! Five routes are available: the power series itself, the two-step
//! recursion `φ_{n+2} = (1+t²)φ_n + [n 1] t/(n+1)`, the finite closed forms,
//! the integral representation and the leading-order asymptotics.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracbinom::binom_half_exact;
use crate::quad::{integrate, QuadraturePolicy};
use crate::series::{averaged_limit, CompensatedSum, SeriesOutcome, SeriesPolicy};

/// `|t|` from which the automatic route switches from the series to the closed form.
pub const CLOSED_FORM_THRESHOLD: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenFuncRoute {
    Series,
    Recursive,
    Closed,
    Integral,
    Asymptotic,
}

impl GenFuncRoute {
    pub const ALL: [GenFuncRoute; 5] = [
        GenFuncRoute::Series,
        GenFuncRoute::Recursive,
        GenFuncRoute::Closed,
        GenFuncRoute::Integral,
        GenFuncRoute::Asymptotic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GenFuncRoute::Series => "series",
            GenFuncRoute::Recursive => "recursive",
            GenFuncRoute::Closed => "closed",
            GenFuncRoute::Integral => "integral",
            GenFuncRoute::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for GenFuncRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenFuncRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        GenFuncRoute::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| Error::domain(format!("unknown route {s:?}")))
    }
}

/// One evaluation of `φ_n(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenFuncPoint {
    pub n: u32,
    pub t: f64,
    pub value: f64,
    pub route: GenFuncRoute,
}

fn check_t(t: f64, lo_open: bool, what: &str) -> Result<()> {
    let lo_ok = if lo_open { t > -1.0 } else { t >= -1.0 };
    if lo_ok && t <= 1.0 {
        Ok(())
    } else {
        let interval = if lo_open { "(−1, 1]" } else { "[−1, 1]" };
        Err(Error::domain(format!("{what}: t = {t} outside {interval}")))
    }
}

/// `φ_0(t) = 1 + (2/π) arctan t` on (−1, 1].
pub fn phi0(t: f64) -> Result<f64> {
    check_t(t, true, "φ_0")?;
    Ok(1.0 + 2.0 / PI * t.atan())
}

/// `φ_1(t) = t + √(1+t²)` on [−1, 1].
pub fn phi1(t: f64) -> Result<f64> {
    check_t(t, false, "φ_1")?;
    Ok(t + t.mul_add(t, 1.0).sqrt())
}

fn coefficient_one(n: u32) -> f64 {
    binom_half_exact(n, 1).to_f64()
}

/// The power series, truncated per `policy`.
///
/// Once past `k = n` the two stride-two coefficient chains alternate in sign
/// and shrink, so the first omitted term of each chain bounds its remainder.
/// At `|t| = 1` that remainder decays only algebraically and the partial sums
/// are accelerated by repeated averaging instead.
pub fn phi_series(n: u32, t: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    policy.validate()?;
    if !t.is_finite() || t.abs() > 1.0 {
        return Err(Error::Divergence(format!("φ_{n} series at t = {t}")));
    }
    let nf = n as f64;
    let t2 = t * t;
    if t.abs() == 1.0 {
        return phi_series_unit(n, t, policy);
    }
    let mut even = 1.0;
    let mut odd = coefficient_one(n) * t;
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut terms = 0usize;
    let mut k = 0u64;
    loop {
        acc.add(even);
        acc.add(odd);
        magnitude += even.abs() + odd.abs();
        terms += 2;
        let kf = k as f64;
        even *= (nf - kf) / (kf + 2.0) * t2;
        odd *= (nf - kf - 1.0) / (kf + 3.0) * t2;
        k += 2;
        let value = acc.value();
        let roundoff = 2.0 * f64::EPSILON * magnitude;
        if kf + 2.0 > nf {
            let truncation = even.abs() + odd.abs();
            let bound = truncation + roundoff;
            // once the tail is below rounding error more terms cannot help
            if policy.is_met(value, bound) || truncation <= roundoff {
                return Ok(SeriesOutcome::judged(value, terms, bound, policy));
            }
        }
        if terms >= policy.max_terms {
            let bound = (even.abs() + odd.abs()) / (1.0 - t2);
            return Ok(SeriesOutcome::judged(value, terms, bound, policy));
        }
    }
}

/// |t| = 1: each stride-two chain alternates once k > n, so each is
/// summed by averaging its own partial sums.
fn phi_series_unit(n: u32, t: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    let nf = n as f64;
    let mut chains = [ChainSum::new(1.0), ChainSum::new(coefficient_one(n))];
    let mut k = 0u64;
    let mut terms = 0usize;
    let mut next_check = 32usize;
    loop {
        let kf = k as f64;
        chains[0].push((nf - kf) / (kf + 2.0), kf + 2.0 > nf);
        chains[1].push((nf - kf - 1.0) / (kf + 3.0), kf + 3.0 > nf);
        terms += 2;
        k += 2;
        let done = chains.iter().all(|c| c.term == 0.0);
        let checked = chains[0].partials.len().min(chains[1].partials.len());
        if done || checked >= next_check || terms >= policy.max_terms {
            let (e, e_trunc, e_round) = chains[0].limit();
            let (o, o_trunc, o_round) = chains[1].limit();
            let value = e + t * o;
            let roundoff = e_round + o_round;
            let bound = e_trunc + o_trunc + roundoff;
            let stalled = e_trunc + o_trunc <= roundoff;
            if done || stalled || policy.is_met(value, bound) || terms >= policy.max_terms {
                return Ok(SeriesOutcome::judged(value, terms, bound, policy));
            }
            for c in &mut chains {
                c.trim();
            }
            next_check = if checked >= 256 { 160 } else { next_check * 2 };
        }
    }
}

struct ChainSum {
    term: f64,
    acc: CompensatedSum,
    magnitude: f64,
    partials: Vec<f64>,
}

impl ChainSum {
    fn new(first: f64) -> Self {
        ChainSum {
            term: first,
            acc: CompensatedSum::new(),
            magnitude: 0.0,
            partials: Vec::new(),
        }
    }

    /// Adds the current term and advances by `ratio`; partial sums are
    /// kept once the chain is alternating.
    fn push(&mut self, ratio: f64, alternating: bool) {
        self.acc.add(self.term);
        self.magnitude += self.term.abs();
        self.term *= ratio;
        if alternating {
            self.partials.push(self.acc.value());
        }
    }

    /// Limit, truncation estimate and rounding estimate.
    fn limit(&self) -> (f64, f64, f64) {
        let roundoff = 2.0 * f64::EPSILON * self.magnitude;
        if self.term == 0.0 {
            return (self.acc.value(), 0.0, roundoff);
        }
        if self.partials.is_empty() {
            return (self.acc.value(), f64::INFINITY, roundoff);
        }
        let (v, spread) = averaged_limit(&self.partials);
        (v, spread, roundoff)
    }

    fn trim(&mut self) {
        if self.partials.len() > 128 {
            self.partials.drain(..self.partials.len() - 128);
        }
    }
}

/// `φ_n(t)` by iterating the two-step recursion from `φ_0` or `φ_1`.
pub fn phi_recursive(n: u32, t: f64) -> Result<f64> {
    let (mut m, mut value) = if n.is_multiple_of(2) {
        (0, phi0(t)?)
    } else {
        (1, phi1(t)?)
    };
    let s = t.mul_add(t, 1.0);
    while m < n {
        value = s * value + coefficient_one(m) / (m as f64 + 1.0) * t;
        m += 2;
    }
    Ok(value)
}

/// `4^k / C(2k, k)` for k = 0..=m.
pub(crate) fn inverse_central_ratios(m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let mut g = 1.0;
    out.push(g);
    for k in 1..=m {
        let kf = k as f64;
        g *= 2.0 * kf / (2.0 * kf - 1.0);
        out.push(g);
    }
    out
}

/// `C(2k, k) / 4^k` for k = 0..=m.
pub(crate) fn central_ratios(m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let mut b = 1.0;
    out.push(b);
    for k in 1..=m {
        let kf = k as f64;
        b *= (2.0 * kf - 1.0) / (2.0 * kf);
        out.push(b);
    }
    out
}

/// The finite closed forms, split by the parity of `n`.
pub fn phi_closed(n: u32, t: f64) -> Result<f64> {
    let m = (n / 2) as usize;
    let s = t.mul_add(t, 1.0);
    let inv_s = 1.0 / s;
    if n.is_multiple_of(2) {
        let base = phi0(t)?;
        let g = inverse_central_ratios(m);
        let mut acc = CompensatedSum::new();
        let mut p = 1.0;
        for (k, gk) in g.iter().enumerate().skip(1) {
            p *= inv_s;
            acc.add(gk / k as f64 * p);
        }
        Ok(s.powi(m as i32) * (base + t / PI * acc.value()))
    } else {
        check_t(t, false, "φ_{2m+1}")?;
        let b = central_ratios(m);
        let mut acc = CompensatedSum::new();
        let mut p = 1.0;
        for bk in b.iter() {
            acc.add(bk * p);
            p *= inv_s;
        }
        Ok(s.powi(m as i32) * (s.sqrt() + t * acc.value()))
    }
}

/// `(1+t²)^{n/2} (1 + [n 1] ∫₀ᵗ (1+s²)^{−(n/2+1)} ds)`.
pub fn phi_integral(n: u32, t: f64, qp: &QuadraturePolicy) -> Result<f64> {
    qp.validate()?;
    if !t.is_finite() {
        return Err(Error::domain("φ_n integral at non-finite t"));
    }
    let half = n as f64 / 2.0;
    let out = integrate(|s| s.mul_add(s, 1.0).powf(-(half + 1.0)), 0.0, t, qp)?;
    Ok(t.mul_add(t, 1.0).powf(half) * (1.0 + coefficient_one(n) * out.value))
}

/// Leading-order behaviour as `n → ∞`: `(1 + sign t)(1+t²)^{n/2}` for
/// either parity, which is `2^{n/2+1}` at `t = 1`.
///
/// For even `n` the tail of the closed-form sum is
/// `Σ_{k≥1} 4^k/(k C(2k,k)) (1+t²)^{−k} = 2(π/2 − arctan|t|)/|t|`, which
/// lifts `φ_0(t)` to `1 + sign t`. For `t < 0` the leading term vanishes.
pub fn phi_asymptotic(n: u32, t: f64) -> Result<f64> {
    check_t(t, true, "φ_n asymptotics")?;
    let sign = if t > 0.0 {
        1.0
    } else if t < 0.0 {
        -1.0
    } else {
        0.0
    };
    let s = t.mul_add(t, 1.0);
    let m = (n / 2) as i32;
    let power = if n.is_multiple_of(2) {
        s.powi(m)
    } else {
        s.powi(m) * s.sqrt()
    };
    Ok((1.0 + sign) * power)
}

/// `φ_n(t)` by the chosen route; `None` picks the series for `|t| < 0.99` and
/// the closed form otherwise, or when the series cannot meet the default policy.
pub fn phi(n: u32, t: f64, route: Option<GenFuncRoute>) -> Result<GenFuncPoint> {
    let auto = route.is_none();
    let mut route = route.unwrap_or(if t.abs() >= CLOSED_FORM_THRESHOLD {
        GenFuncRoute::Closed
    } else {
        GenFuncRoute::Series
    });
    if auto && route == GenFuncRoute::Series {
        // cancelling sums may not certify the default tolerance
        let out = phi_series(n, t, &SeriesPolicy::default())?;
        if out.converged {
            return Ok(GenFuncPoint {
                n,
                t,
                value: out.value,
                route,
            });
        }
        route = GenFuncRoute::Closed;
    }
    let value = match route {
        GenFuncRoute::Series => {
            let out = phi_series(n, t, &SeriesPolicy::default())?;
            if !out.converged {
                return Err(Error::NotConverged {
                    what: format!("φ_{n}({t}) series"),
                    partial: out,
                });
            }
            out.value
        }
        GenFuncRoute::Recursive => phi_recursive(n, t)?,
        GenFuncRoute::Closed => phi_closed(n, t)?,
        GenFuncRoute::Integral => phi_integral(n, t, &QuadraturePolicy::default())?,
        GenFuncRoute::Asymptotic => phi_asymptotic(n, t)?,
    };
    Ok(GenFuncPoint { n, t, value, route })
}

/// `W(x) = Σ_{k≥1} 4^k x^k / (k C(2k,k))` in closed form, for x ∈ [−1, 1).
pub fn w_closed(x: f64) -> Result<f64> {
    if !(-1.0..1.0).contains(&x) {
        return Err(Error::domain(format!("W: x = {x} outside [−1, 1)")));
    }
    let u = x / (1.0 - x);
    if u >= 0.0 {
        let r = u.sqrt();
        Ok(2.0 * r * r.atan())
    } else {
        let r = (-u).sqrt();
        Ok(-2.0 * r * r.atanh())
    }
}

/// `Z(x) = Σ C(2k,k) 4^{−k} x^k = 1/√(1−x)`, for x ∈ [−1, 1).
pub fn z_closed(x: f64) -> Result<f64> {
    if !(-1.0..1.0).contains(&x) {
        return Err(Error::domain(format!("Z: x = {x} outside [−1, 1)")));
    }
    Ok(1.0 / (1.0 - x).sqrt())
}

/// `Σ C(2k,k) x^k = 1/√(1−4x)`, for x ∈ [−1/4, 1/4).
pub fn z_central_closed(x: f64) -> Result<f64> {
    if !(-0.25..0.25).contains(&x) {
        return Err(Error::domain(format!("central Z: x = {x} outside [−1/4, 1/4)")));
    }
    Ok(1.0 / (1.0 - 4.0 * x).sqrt())
}

/// Sums `Σ_{k≥k0} c_k x^k` where the coefficients are positive and
/// `c_{k+1}/c_k = ratio(k)` stays in (0, 1], with `|x| · sup ratio ≤ 1`.
fn positive_coefficient_series(
    first: f64,
    k0: u64,
    x: f64,
    scale: f64,
    ratio: impl Fn(u64) -> f64,
    policy: &SeriesPolicy,
) -> SeriesOutcome {
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut term = first;
    let mut k = k0;
    let mut terms = 0usize;
    let mut partials = Vec::new();
    let alternating_unit = x * scale == -1.0;
    loop {
        acc.add(term);
        magnitude += term.abs();
        terms += 1;
        let next = term * ratio(k) * x * scale;
        k += 1;
        term = next;
        let value = acc.value();
        let roundoff = 2.0 * f64::EPSILON * magnitude;
        if alternating_unit {
            partials.push(value);
            if partials.len() >= 32 && terms.is_multiple_of(32) || terms >= policy.max_terms {
                let (limit, spread) = averaged_limit(&partials);
                let stalled = spread <= roundoff;
                if stalled || policy.is_met(limit, spread + roundoff) || terms >= policy.max_terms {
                    return SeriesOutcome::judged(limit, terms, spread + roundoff, policy);
                }
                if partials.len() > 128 {
                    partials.drain(..partials.len() - 128);
                }
            }
            continue;
        }
        let y = x * scale;
        let bound = if y < 0.0 { next.abs() } else { next.abs() / (1.0 - y) } + roundoff;
        if policy.is_met(value, bound) || next == 0.0 || terms >= policy.max_terms {
            return SeriesOutcome::judged(value, terms, bound, policy);
        }
    }
}

/// Partial sums of the W series, x ∈ [−1, 1).
pub fn w_series(x: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    policy.validate()?;
    if !(-1.0..1.0).contains(&x) {
        return Err(Error::Divergence(format!("W series at x = {x}")));
    }
    // a_1 x = 2x; a_{k+1}/a_k = 2k/(2k+1)
    Ok(positive_coefficient_series(
        2.0 * x,
        1,
        x,
        1.0,
        |k| 2.0 * k as f64 / (2.0 * k as f64 + 1.0),
        policy,
    ))
}

/// Partial sums of `Σ C(2k,k) 4^{−k} x^k`, x ∈ [−1, 1).
pub fn z_series(x: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    policy.validate()?;
    if !(-1.0..1.0).contains(&x) {
        return Err(Error::Divergence(format!("Z series at x = {x}")));
    }
    Ok(positive_coefficient_series(
        1.0,
        0,
        x,
        1.0,
        |k| (2.0 * k as f64 + 1.0) / (2.0 * k as f64 + 2.0),
        policy,
    ))
}

/// Partial sums of `Σ C(2k,k) x^k`, x ∈ [−1/4, 1/4).
pub fn z_central_series(x: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    policy.validate()?;
    if !(-0.25..0.25).contains(&x) {
        return Err(Error::Divergence(format!("central Z series at x = {x}")));
    }
    // C(2k+2,k+1)/C(2k,k) = (2k+1)(2k+2)/(k+1)²; the factor 4 moves into the scale
    Ok(positive_coefficient_series(
        1.0,
        0,
        x,
        4.0,
        |k| (2.0 * k as f64 + 1.0) * (2.0 * k as f64 + 2.0) / (4.0 * (k as f64 + 1.0).powi(2)),
        policy,
    ))
}
