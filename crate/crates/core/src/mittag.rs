//! The one-parameter Mittag-Leffler function on the real line
//!
//! ```text
//!   E_β(x) = Σ_{n≥0} xⁿ / Γ(βn + 1),
//! ```
//!
//! its square written as a Cauchy product over `[n k]_β`, the small- and
//! large-argument envelopes of `E_β(−x^β)`, and an L1 product-integration
//! Caputo derivative used to check `D^β E_β(μx^β) = μ E_β(μx^β)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracbinom::{binom, Beta};
use crate::gamma::{gamma, ln_abs_gamma, ln_gamma, reciprocal_gamma, GammaPoleSet};
use crate::quad::{integrate, QuadraturePolicy};
use crate::series::{CompensatedSum, SeriesOutcome, SeriesPolicy};

/// For 0 < β < 1 and x < 0 the algebraic expansion is tried first once
/// `|x|^{1/β}` passes this; below it the series is tried first.
pub const ASYMPTOTIC_SWITCH: f64 = 18.0;

// e^{−σ^{1/β}} is below the smallest normal double past σ^{1/β} = 708
const LAPLACE_REACH: f64 = 708.0;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLQuery {
    pub beta: f64,
    pub x: f64,
    pub policy: SeriesPolicy,
}

impl MLQuery {
    pub fn new(beta: f64, x: f64) -> Self {
        MLQuery {
            beta,
            x,
            policy: SeriesPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: SeriesPolicy) -> Self {
        self.policy = policy;
        self
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("β must be positive and finite, got {beta}")))
    }
}

/// `xⁿ / Γ(βn + 1)`, falling back to log space when either factor leaves
/// the double range.
fn series_term(x: f64, beta: f64, n: u64) -> Result<f64> {
    let arg = beta * n as f64 + 1.0;
    if arg <= 170.0 {
        let p = x.powi(n as i32);
        if p.is_finite() && p != 0.0 {
            return Ok(p * reciprocal_gamma(arg));
        }
    }
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * (n as f64 * x.abs().ln() - ln_gamma(arg)?).exp())
}

fn ml_series(beta: f64, x: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut term = 1.0;
    let mut n = 0u64;
    loop {
        acc.add(term);
        magnitude += term.abs();
        let next = series_term(x, beta, n + 1)?;
        n += 1;
        let value = acc.value();
        let roundoff = UNIT_ROUNDOFF * magnitude;
        if next == 0.0 {
            return Ok(SeriesOutcome::judged(value, n as usize, roundoff, policy));
        }
        let q = (next / term).abs();
        if q < 1.0 {
            // term ratios decrease from here on, so the tail is geometric at worst
            let truncation = next.abs() / (1.0 - q);
            let bound = truncation + roundoff;
            if policy.is_met(value, bound) || truncation <= roundoff * 1e-3 {
                return Ok(SeriesOutcome::judged(value, n as usize, bound, policy));
            }
        }
        if n as usize >= policy.max_terms {
            return Ok(SeriesOutcome::judged(value, n as usize, f64::INFINITY, policy));
        }
        term = next;
    }
}

/// `|Γ(βk)| y^{−k} / π` bounds `|y^{−k}/Γ(1−βk)|` and is smooth in k.
fn asymptotic_envelope(beta: f64, ln_y: f64, k: u64) -> Result<f64> {
    Ok((ln_gamma(beta * k as f64)? - k as f64 * ln_y).exp() / std::f64::consts::PI)
}

/// `E_β(−y) ≈ Σ_{k≥1} (−1)^{k+1} y^{−k} / Γ(1 − βk)`, truncated where the
/// envelope of the terms bottoms out.
fn ml_negative_asymptotic(beta: f64, y: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    let ln_y = y.ln();
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut envelope = asymptotic_envelope(beta, ln_y, 1)?;
    let mut k = 1u64;
    loop {
        let arg = 1.0 - beta * k as f64;
        if !GammaPoleSet::contains(arg) {
            let (ln_abs, sign) = ln_abs_gamma(arg)?;
            let alternation = if k % 2 == 1 { 1.0 } else { -1.0 };
            let term = alternation * sign * (-(k as f64) * ln_y - ln_abs).exp();
            acc.add(term);
            magnitude += term.abs();
        }
        let value = acc.value();
        let next = asymptotic_envelope(beta, ln_y, k + 1)?;
        let bound = next + UNIT_ROUNDOFF * magnitude;
        k += 1;
        if policy.is_met(value, bound) || next > envelope || k as usize >= policy.max_terms {
            return Ok(SeriesOutcome::judged(value, k as usize - 1, bound, policy));
        }
        envelope = next;
    }
}

/// `E_β(−y)` for 0 < β < 1 from its spectral representation
///
/// ```text
///   E_β(−y) = (sin βπ / (πβ)) ∫₀^∞ e^{−σ^{1/β}} y / (σ² + 2σy cos βπ + y²) dσ,
/// ```
///
/// whose integrand is positive, so nothing cancels.
fn ml_negative_laplace(beta: f64, y: f64, policy: &SeriesPolicy) -> Result<SeriesOutcome> {
    let (sin, cos) = (std::f64::consts::PI * beta).sin_cos();
    let prefactor = sin / (std::f64::consts::PI * beta);
    let f = |s: f64| (-s.powf(1.0 / beta)).exp() * y / (s * s + 2.0 * s * y * cos + y * y);
    let reach = LAPLACE_REACH.powf(beta);
    let mut cuts = vec![0.0];
    // the kernel peaks near σ = y when β is close to 1
    for c in [y, 1.0] {
        if c < reach && !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.push(reach);
    cuts.sort_by(f64::total_cmp);
    let qp = QuadraturePolicy {
        abs_tol: (policy.abs_tol / prefactor).max(f64::MIN_POSITIVE),
        rel_tol: 0.5 * policy.rel_tol / (cuts.len() - 1) as f64,
        max_subdivisions: 4000,
    };
    let mut value = CompensatedSum::new();
    let mut error = 0.0;
    let mut evaluations = 0;
    for w in cuts.windows(2) {
        match integrate(f, w[0], w[1], &qp) {
            Ok(out) => {
                value.add(out.value);
                error += out.abs_error;
                evaluations += out.evaluations;
            }
            Err(Error::Accuracy { value: v, estimate, .. }) => {
                value.add(v);
                error += estimate;
            }
            Err(e) => return Err(e),
        }
    }
    // ∫_reach^∞ e^{−σ^{1/β}} dσ ≤ β e^{−708} 708^{β−1}, kernel ≤ 1/(y sin²βπ)
    let min_den = if cos < 0.0 { sin * sin } else { 1.0 };
    let tail = beta * (-LAPLACE_REACH).exp() * LAPLACE_REACH.powf(beta - 1.0) / (y * min_den);
    let v = prefactor * value.value();
    let bound = prefactor * (error + tail) + UNIT_ROUNDOFF * v.abs();
    Ok(SeriesOutcome::judged(v, evaluations, bound, policy))
}

/// `E_β(x)`; `Err(NotConverged)` carries the partial result when the policy
/// cannot be met.
///
/// The power series serves everywhere. On the negative axis with β < 1 the
/// algebraic expansion (large `|x|`) and the spectral integral (where the
/// series cancels) back it up.
pub fn mittag_leffler(q: &MLQuery) -> Result<SeriesOutcome> {
    check_beta(q.beta)?;
    q.policy.validate()?;
    if !q.x.is_finite() {
        return Err(Error::domain("Mittag-Leffler argument must be finite"));
    }
    if q.x == 0.0 {
        return Ok(SeriesOutcome::exact(1.0, 1));
    }
    let out = if q.x < 0.0 && q.beta < 1.0 {
        let y = -q.x;
        let first = if y.powf(1.0 / q.beta) > ASYMPTOTIC_SWITCH {
            ml_negative_asymptotic(q.beta, y, &q.policy)?
        } else {
            ml_series(q.beta, q.x, &q.policy)?
        };
        if first.converged {
            first
        } else {
            let second = ml_negative_laplace(q.beta, y, &q.policy)?;
            if second.converged || second.tail_bound < first.tail_bound {
                second
            } else {
                first
            }
        }
    } else {
        ml_series(q.beta, q.x, &q.policy)?
    };
    if !out.value.is_finite() {
        return Err(Error::Overflow(format!(
            "E_{}({}) exceeds the double range",
            q.beta, q.x
        )));
    }
    if !out.converged {
        return Err(Error::NotConverged {
            what: format!("E_{}({})", q.beta, q.x),
            partial: out,
        });
    }
    Ok(out)
}

/// `E_β(x)` with the default policy.
pub fn ml(beta: f64, x: f64) -> Result<f64> {
    mittag_leffler(&MLQuery::new(beta, x)).map(|o| o.value)
}

/// `Σ_{n<N} xⁿ/Γ(βn+1) Σ_{k=0}^n [n k]_β`, the Cauchy square of the series.
pub fn ml_square_cauchy(beta: f64, x: f64, n_terms: usize) -> Result<f64> {
    check_beta(beta)?;
    if n_terms < 4 {
        return Err(Error::domain("the Cauchy square needs at least 4 terms"));
    }
    if !x.is_finite() {
        return Err(Error::domain("Mittag-Leffler argument must be finite"));
    }
    let b = Beta::float(beta)?;
    let mut acc = CompensatedSum::new();
    for n in 0..n_terms as u64 {
        let outer = series_term(x, beta, n)?;
        if outer == 0.0 {
            continue;
        }
        let inner: CompensatedSum = (0..=n as i64)
            .map(|k| binom(n as u32, k, b))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .collect();
        acc.add(outer * inner.value());
    }
    let v = acc.value();
    if !v.is_finite() {
        return Err(Error::Overflow(format!("Cauchy square of E_{beta}({x})")));
    }
    Ok(v)
}

/// `(e₀(x), e∞(x)) = (exp(−x^β/Γ(1+β)), x^{−β}/Γ(1−β))`, the small- and
/// large-x behaviour of `E_β(−x^β)` for 0 < β < 1.
pub fn ml_envelopes(beta: f64, x: f64) -> Result<(f64, f64)> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(format!("envelopes need 0 < β < 1, got {beta}")));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("envelopes need x > 0, got {x}")));
    }
    let xb = x.powf(beta);
    let e0 = (-xb / gamma(1.0 + beta)?).exp();
    let einf = 1.0 / (xb * gamma(1.0 - beta)?);
    Ok((e0, einf))
}

/// A mesh on `[0, end]` for the Caputo derivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaputoGrid {
    mesh: Vec<f64>,
    grading: f64,
}

impl CaputoGrid {
    pub const MIN_NODES: usize = 16;

    /// `x_i = end · (i/(N−1))^grading`, i = 0..N−1.
    pub fn graded(end: f64, nodes: usize, grading: f64) -> Result<Self> {
        if !(end > 0.0 && end.is_finite()) {
            return Err(Error::domain(format!("mesh end must be positive, got {end}")));
        }
        if nodes < Self::MIN_NODES {
            return Err(Error::domain(format!("mesh needs at least {} nodes", Self::MIN_NODES)));
        }
        if !(grading >= 1.0 && grading.is_finite()) {
            return Err(Error::domain(format!("grading exponent must be ≥ 1, got {grading}")));
        }
        let last = (nodes - 1) as f64;
        let mut mesh: Vec<f64> = (0..nodes).map(|i| end * (i as f64 / last).powf(grading)).collect();
        mesh[nodes - 1] = end;
        CaputoGrid::from_mesh(mesh, grading)
    }

    pub fn from_mesh(mesh: Vec<f64>, grading: f64) -> Result<Self> {
        if mesh.len() < Self::MIN_NODES {
            return Err(Error::domain(format!("mesh needs at least {} nodes", Self::MIN_NODES)));
        }
        if mesh[0] != 0.0 {
            return Err(Error::domain("mesh must start at 0"));
        }
        if mesh.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::domain("mesh must be strictly increasing and finite"));
        }
        if !(grading >= 1.0) {
            return Err(Error::domain(format!("grading exponent must be ≥ 1, got {grading}")));
        }
        Ok(CaputoGrid { mesh, grading })
    }

    pub fn mesh(&self) -> &[f64] {
        &self.mesh
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    pub fn len(&self) -> usize {
        self.mesh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mesh.is_empty()
    }

    /// Index of the node nearest to `x`.
    pub fn nearest_node(&self, x: f64) -> usize {
        match self.mesh.binary_search_by(|m| m.total_cmp(&x)) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) if i >= self.mesh.len() => self.mesh.len() - 1,
            Err(i) => {
                if x - self.mesh[i - 1] <= self.mesh[i] - x {
                    i - 1
                } else {
                    i
                }
            }
        }
    }

    /// `f` sampled on the mesh.
    pub fn sample<F: FnMut(f64) -> Result<f64>>(&self, f: F) -> Result<Vec<f64>> {
        self.mesh.iter().copied().map(f).collect()
    }
}

/// `A^p − B^p` for A > B ≥ 0 without cancellation.
fn power_difference(a: f64, b: f64, p: f64) -> f64 {
    if b == 0.0 {
        return a.powf(p);
    }
    b.powf(p) * (p * ((a - b) / b).ln_1p()).exp_m1()
}

/// `(1/Γ(1−β)) ∫₀^{x_j} u′(s) (x_j − s)^{−β} ds` at mesh node `node`, with
/// `u` taken piecewise linear between the samples and the kernel integrated
/// exactly on each panel.
pub fn caputo_derivative(grid: &CaputoGrid, samples: &[f64], beta: f64, node: usize) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::domain(format!("Caputo order must lie in (0, 1), got {beta}")));
    }
    if samples.len() != grid.len() {
        return Err(Error::domain(format!(
            "{} samples for a {}-node mesh",
            samples.len(),
            grid.len()
        )));
    }
    if node >= grid.len() {
        return Err(Error::domain(format!("node {node} outside the mesh")));
    }
    let x = &grid.mesh;
    let xj = x[node];
    let p = 1.0 - beta;
    let mut acc = CompensatedSum::new();
    for i in 0..node {
        let h = x[i + 1] - x[i];
        let slope = (samples[i + 1] - samples[i]) / h;
        acc.add(slope * power_difference(xj - x[i], xj - x[i + 1], p));
    }
    Ok(acc.value() / gamma(2.0 - beta)?)
}
