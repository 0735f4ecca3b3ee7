//! Truncation contract shared by every infinite series in the crate, and the
//! two small accelerators the slowly convergent cases need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How far to sum an infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_terms: 200_000,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        let policy = SeriesPolicy {
            rel_tol,
            abs_tol,
            max_terms,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::domain(format!(
                "series rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::domain("series abs_tol must be non-negative"));
        }
        if self.max_terms < 8 {
            return Err(Error::domain("series max_terms must be at least 8"));
        }
        Ok(())
    }

    /// The error budget for a sum of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_tol)
    }

    pub fn is_met(&self, value: f64, bound: f64) -> bool {
        bound <= self.target(value)
    }
}

/// A truncated series together with what is known about the discarded part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesOutcome {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

impl SeriesOutcome {
    pub fn exact(value: f64, terms_used: usize) -> Self {
        SeriesOutcome {
            value,
            terms_used,
            tail_bound: 0.0,
            converged: true,
        }
    }

    pub(crate) fn judged(value: f64, terms_used: usize, tail_bound: f64, policy: &SeriesPolicy) -> Self {
        SeriesOutcome {
            value,
            terms_used,
            tail_bound,
            converged: tail_bound.is_finite() && policy.is_met(value, tail_bound),
        }
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Repeated averaging of consecutive partial sums (Euler–van Wijngaarden).
///
/// `partial_sums` are the partial sums of an alternating series whose term
/// magnitudes decrease smoothly. Each level replaces neighbours by their
/// mean, which pairs consecutive terms; the returned estimate is the top of
/// the triangle and the error estimate is the spread of the last level.
pub fn averaged_limit(partial_sums: &[f64]) -> (f64, f64) {
    match partial_sums.len() {
        0 => (0.0, f64::INFINITY),
        1 => (partial_sums[0], f64::INFINITY),
        _ => {
            let mut level = partial_sums.to_vec();
            let mut spread = (level[level.len() - 1] - level[level.len() - 2]).abs();
            while level.len() > 1 {
                let next: Vec<f64> = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
                if next.len() >= 2 {
                    spread = (next[next.len() - 1] - next[next.len() - 2]).abs();
                }
                level = next;
            }
            (level[0], spread)
        }
    }
}

/// Richardson extrapolation of `values[j] ≈ L + Σ_m c_m h_j^{p_m}` with
/// `h_j = h_0 / 2^j` and exponents `first_exponent, first_exponent + 1, …`.
///
/// Returns the extrapolated limit and the difference between the two best
/// diagonal entries.
pub fn richardson_halving(values: &[f64], first_exponent: f64) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    let mut table: Vec<Vec<f64>> = vec![vec![values[0]]];
    for j in 1..n {
        let mut row = vec![values[j]];
        for m in 1..=j {
            let p = first_exponent + (m - 1) as f64;
            let factor = 2f64.powf(p);
            let improved = (factor * row[m - 1] - table[j - 1][m - 1]) / (factor - 1.0);
            row.push(improved);
        }
        table.push(row);
    }
    let best = table[n - 1][n - 1];
    let estimate = if n >= 2 {
        (best - table[n - 2][n - 2]).abs()
    } else {
        f64::INFINITY
    };
    (best, estimate)
}
