//! Gauss's hypergeometric function ₂F₁(a, b; c; x) on the closed unit
//! interval, Gauss's summation formula at x = 1 and the ellipse perimeter.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gamma, ln_abs_gamma, GammaPoleSet};
use crate::quad::{integrate, QuadraturePolicy};
use crate::series::{averaged_limit, richardson_halving, CompensatedSum, SeriesOutcome, SeriesPolicy};

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64, x: f64) -> Self {
        HypParams { a, b, c, x }
    }

    /// Number of terms when `a` or `b` is a non-positive integer.
    fn terminating_length(&self) -> Option<u64> {
        [self.a, self.b]
            .into_iter()
            .filter(|&v| GammaPoleSet::contains(v))
            .map(|v| (-v) as u64 + 1)
            .min()
    }

    fn validate(&self) -> Result<Option<u64>> {
        let HypParams { a, b, c, x } = *self;
        if ![a, b, c, x].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("₂F₁ parameters must be finite"));
        }
        let terminating = self.terminating_length();
        if GammaPoleSet::contains(c) {
            let safe = terminating.is_some_and(|len| (len as f64) <= -c + 1.0);
            if !safe {
                return Err(Error::domain(format!("₂F₁ with c = {c} at a pole of Γ")));
            }
        }
        Ok(terminating)
    }
}

fn term_ratio(a: f64, b: f64, c: f64, x: f64, k: f64) -> f64 {
    (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
}

/// The Gauss series.
///
/// Inside the unit disc the tail is bounded through the term ratio; at
/// x = 1 (needs c − a − b > 0) partial sums at doubling lengths are
/// Richardson-extrapolated, and at x = −1 they are averaged.
pub fn hyp2f1(p: &HypParams, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    policy.validate()?;
    let terminating = p.validate()?;
    let HypParams { a, b, c, x } = *p;
    if let Some(len) = terminating {
        let mut acc = CompensatedSum::new();
        let mut term = 1.0;
        for k in 0..len {
            acc.add(term);
            term *= term_ratio(a, b, c, x, k as f64);
        }
        return Ok(SeriesOutcome::exact(acc.value(), len as usize));
    }
    if x.abs() > 1.0 {
        return Err(Error::Divergence(format!("₂F₁ series at x = {x}")));
    }
    let trust = (2.0 * (a.abs() + b.abs() + c.abs()) + 4.0).ceil() as u64;
    if x == 1.0 {
        return hyp_at_one(p, trust, policy);
    }
    if x == -1.0 {
        if c - a - b <= -1.0 {
            return Err(Error::Divergence(format!(
                "₂F₁ at x = −1 needs c − a − b > −1, got {}",
                c - a - b
            )));
        }
        return hyp_at_minus_one(p, trust, policy);
    }
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut term = 1.0;
    let mut k = 0u64;
    loop {
        acc.add(term);
        magnitude += term.abs();
        let next = term * term_ratio(a, b, c, x, k as f64);
        k += 1;
        let value = acc.value();
        let roundoff = UNIT_ROUNDOFF * magnitude;
        if next == 0.0 {
            return Ok(SeriesOutcome::judged(value, k as usize, roundoff, policy));
        }
        if k > trust {
            let r = term_ratio(a, b, c, x, k as f64);
            let rho = r.abs().max(x.abs());
            let mut truncation = next.abs() / (1.0 - rho);
            if r < 0.0 {
                truncation = truncation.min(next.abs());
            }
            let bound = truncation + roundoff;
            if policy.is_met(value, bound) || truncation <= roundoff * 1e-3 {
                return Ok(SeriesOutcome::judged(value, k as usize, bound, policy));
            }
        }
        if k as usize >= policy.max_terms {
            return Ok(SeriesOutcome::judged(value, k as usize, f64::INFINITY, policy));
        }
        term = next;
    }
}

fn hyp_at_one(p: &HypParams, trust: u64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    let HypParams { a, b, c, .. } = *p;
    let s = c - a - b;
    if s <= 0.0 {
        return Err(Error::Divergence(format!("₂F₁ at x = 1 needs c − a − b > 0, got {s}")));
    }
    let mut length = (8 * trust).max(64);
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    let mut k = 0u64;
    let mut levels = Vec::new();
    let mut last = SeriesOutcome::judged(0.0, 0, f64::INFINITY, policy);
    while (length as usize) <= policy.max_terms {
        while k < length {
            acc.add(term);
            term *= term_ratio(a, b, c, 1.0, k as f64);
            k += 1;
        }
        levels.push(acc.value());
        if levels.len() >= 3 {
            let (limit, estimate) = richardson_halving(&levels, s);
            last = SeriesOutcome::judged(limit, k as usize, estimate, policy);
            if last.converged {
                return Ok(last);
            }
        }
        length *= 2;
    }
    Ok(last)
}

fn hyp_at_minus_one(p: &HypParams, trust: u64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    let HypParams { a, b, c, .. } = *p;
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut term = 1.0;
    let mut k = 0u64;
    let mut partials = Vec::new();
    let mut check = 32usize;
    loop {
        acc.add(term);
        magnitude += term.abs();
        term *= term_ratio(a, b, c, -1.0, k as f64);
        k += 1;
        if k > trust {
            partials.push(acc.value());
        }
        if partials.len() == check || k as usize >= policy.max_terms {
            let (limit, spread) = averaged_limit(&partials);
            let bound = spread + UNIT_ROUNDOFF * magnitude;
            let out = SeriesOutcome::judged(limit, k as usize, bound, policy);
            if out.converged || k as usize >= policy.max_terms || check >= 4096 {
                return Ok(out);
            }
            check *= 2;
        }
    }
}

/// The Euler integral
///
/// ```text
///   Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ s^{b−1} (1−s)^{c−b−1} (1−xs)^{−a} ds,
/// ```
///
/// valid for c > b > 0 and x < 1. Each half of the interval is mapped so
/// that its endpoint power disappears.
pub fn hyp2f1_euler(p: &HypParams, qp: &QuadraturePolicy) -> Result<f64> {
    qp.validate()?;
    let HypParams { a, b, c, x } = *p;
    if !(c > b && b > 0.0) {
        return Err(Error::domain(format!(
            "Euler integral needs c > b > 0, got b = {b}, c = {c}"
        )));
    }
    if !(x < 1.0) || !x.is_finite() {
        return Err(Error::domain(format!("Euler integral needs x < 1, got {x}")));
    }
    let d = c - b;
    // s = u^{1/b} on [0, 1/2]
    let left = integrate(
        |u| {
            let s = u.powf(1.0 / b);
            (1.0 - s).powf(d - 1.0) * (1.0 - x * s).powf(-a)
        },
        0.0,
        0.5f64.powf(b),
        qp,
    )?;
    // s = 1 − v^{1/d} on [1/2, 1]
    let right = integrate(
        |v| {
            let s = 1.0 - v.powf(1.0 / d);
            s.powf(b - 1.0) * (1.0 - x * s).powf(-a)
        },
        0.0,
        0.5f64.powf(d),
        qp,
    )?;
    let integral = left.value / b + right.value / d;
    Ok(gamma(c)? / (gamma(b)? * gamma(d)?) * integral)
}

/// Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)).
pub fn gauss_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    let s = c - a - b;
    if !(s > 0.0) {
        return Err(Error::domain(format!("Gauss summation needs c − a − b > 0, got {s}")));
    }
    for (name, v) in [("c", c), ("c − a", c - a), ("c − b", c - b)] {
        if GammaPoleSet::contains(v) {
            return Err(Error::domain(format!("Gauss summation: {name} = {v} is a pole of Γ")));
        }
    }
    let args = [c, s, c - a, c - b];
    if args.iter().all(|v| v.abs() <= 170.0) {
        return Ok(gamma(c)? * gamma(s)? / (gamma(c - a)? * gamma(c - b)?));
    }
    let (l0, s0) = ln_abs_gamma(c)?;
    let (l1, s1) = ln_abs_gamma(s)?;
    let (l2, s2) = ln_abs_gamma(c - a)?;
    let (l3, s3) = ln_abs_gamma(c - b)?;
    let v = s0 * s1 * s2 * s3 * (l0 + l1 - l2 - l3).exp();
    if v.is_infinite() {
        return Err(Error::Overflow(format!("Gauss summation at ({a}, {b}, {c})")));
    }
    Ok(v)
}

/// Perimeter of the ellipse with semi-axes `a`, `b`:
/// `π(a+b) ₂F₁(−1/2, −1/2; 1; ((a−b)/(a+b))²)`.
pub fn ellipse_perimeter(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) || a + b == 0.0 {
        return Err(Error::domain(format!(
            "ellipse semi-axes must be non-negative and not both zero, got ({a}, {b})"
        )));
    }
    let h = ((a - b) / (a + b)).powi(2);
    let out = hyp2f1(&HypParams::new(-0.5, -0.5, 1.0, h), &SeriesPolicy::default())?;
    if !out.converged {
        return Err(Error::NotConverged {
            what: format!("ellipse perimeter ({a}, {b})"),
            partial: out,
        });
    }
    Ok(PI * (a + b) * out.value)
}
