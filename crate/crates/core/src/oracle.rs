//! Slow, independent reference computations: Γ from its limit-product and
//! integral definitions, the integral form of the binomial theorem, and the
//! ellipse perimeter as an arc length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracbinom::binom_continuous;
use crate::gamma::GammaPoleSet;
use crate::quad::{integrate, QuadraturePolicy};
use crate::series::{richardson_halving, CompensatedSum};

// GK15 panels cannot resolve much below this relative to the integral
const QUAD_REL_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub product_terms: usize,
    pub quad_abs_tol: f64,
    pub domain_truncation: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            product_terms: 1_000_000,
            quad_abs_tol: 1e-10,
            domain_truncation: 60.0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.product_terms < 1000 {
            return Err(Error::domain("oracle product_terms must be at least 1000"));
        }
        if !(self.quad_abs_tol > 0.0 && self.quad_abs_tol <= 1e-6) {
            return Err(Error::domain("oracle quad_abs_tol must lie in (0, 1e-6]"));
        }
        if !(self.domain_truncation >= 1.0 && self.domain_truncation.is_finite()) {
            return Err(Error::domain("oracle domain_truncation must be at least 1"));
        }
        Ok(())
    }

    pub fn with_truncation(mut self, t: f64) -> Self {
        self.domain_truncation = t;
        self
    }

    fn quadrature(&self, abs_tol: f64) -> QuadraturePolicy {
        QuadraturePolicy {
            abs_tol,
            rel_tol: QUAD_REL_FLOOR,
            max_subdivisions: 10_000,
        }
    }
}

/// `Γ(t+1) = lim_N N^t Π_{k=1}^N (1 + t/k)^{−1}`, with Richardson
/// extrapolation over N/8, N/4, N/2, N.
pub fn gamma_limit_product(t: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    if !t.is_finite() || GammaPoleSet::contains(t + 1.0) {
        return Err(Error::domain(format!("Γ({} + 1) is a pole", t)));
    }
    let n_max = cfg.product_terms.next_multiple_of(8);
    let checkpoints = [n_max / 8, n_max / 4, n_max / 2, n_max];
    let mut ln_sum = CompensatedSum::new();
    let mut negative = false;
    let mut levels = Vec::with_capacity(4);
    let mut next = 0;
    for k in 1..=n_max {
        let r = t / k as f64;
        let factor = 1.0 + r;
        if factor < 0.0 {
            negative = !negative;
        }
        ln_sum.add(if r.abs() < 0.5 { r.ln_1p() } else { factor.abs().ln() });
        if k == checkpoints[next] {
            let v = (t * (k as f64).ln() - ln_sum.value()).exp();
            levels.push(if negative { -v } else { v });
            next += 1;
        }
    }
    let (value, _) = richardson_halving(&levels, 1.0);
    Ok(value)
}

/// `Γ(t+1) = ∫₀^∞ τ^t e^{−τ} dτ` for t > −1.
///
/// On [0, 1] the substitution τ = u^{1/(t+1)} removes the endpoint power; the
/// range is cut where `e^{−T} T^t / (1 − t/T)` drops below a tenth of the
/// tolerance.
pub fn gamma_integral(t: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    if !(t > -1.0 && t.is_finite()) {
        return Err(Error::domain(format!("integral Γ(t+1) needs t > −1, got {t}")));
    }
    let tol = cfg.quad_abs_tol;
    let tail_bound = |end: f64| (-end + t * end.ln()).exp() / (1.0 - t / end);
    let mut end = (2.0 * t).max(40.0);
    while tail_bound(end) > 0.1 * tol {
        end *= 1.25;
    }
    let p = 1.0 / (t + 1.0);
    let near = integrate(|u| (-u.powf(p)).exp(), 0.0, 1.0, &cfg.quadrature(0.25 * tol))?;
    let far = integrate(|s| (t * s.ln() - s).exp(), 1.0, end, &cfg.quadrature(0.5 * tol))?;
    let value = near.value * p + far.value;
    let estimate = near.abs_error * p + far.abs_error + tail_bound(end);
    if estimate > tol.max(QUAD_REL_FLOOR * value.abs()) {
        return Err(Error::Accuracy {
            what: format!("integral Γ({t} + 1)"),
            value,
            estimate,
        });
    }
    Ok(value)
}

/// Result of integrating `x ↦ binom(y, x)` over the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinomialIntegral {
    /// ∫ over [−T, y + T].
    pub value: f64,
    /// Size of the first omitted pair of lobes on both sides.
    pub tail_estimate: f64,
    /// Quadrature error estimate summed over pieces.
    pub quadrature_error: f64,
    /// Running value after each pair of oscillation lobes.
    pub paired_partial_sums: Vec<f64>,
}

/// `∫ binom(y, x) dx`, which equals `2^y` for y > −1.
///
/// The integrand is symmetric about y/2 and changes sign at x = y + m,
/// m = 1, 2, …; it is integrated from the centre out lobe by lobe and the
/// lobes are paired so the running sums move monotonically.
pub fn integral_binomial_theorem(y: f64, cfg: &OracleConfig) -> Result<BinomialIntegral> {
    cfg.validate()?;
    if !(y > -1.0 && y.is_finite()) {
        return Err(Error::domain(format!(
            "integral binomial theorem needs y > −1, got {y}"
        )));
    }
    let reach = cfg.domain_truncation;
    let full_lobes = reach.floor() as usize;
    let pieces = full_lobes + 2;
    let policy = cfg.quadrature(cfg.quad_abs_tol / pieces as f64);
    let f = |x: f64| binom_continuous(y, x).unwrap_or(f64::NAN);
    let piece = |a: f64, b: f64| -> Result<(f64, f64)> {
        let out = integrate(f, a, b, &policy)?;
        if !out.value.is_finite() {
            return Err(Error::domain(format!("binom({y}, ·) not finite on [{a}, {b}]")));
        }
        Ok((out.value, out.abs_error))
    };

    let (centre, mut err) = piece(0.5 * y, y + 1.0)?;
    let mut acc = CompensatedSum::new();
    acc.add(centre);
    let mut paired = Vec::with_capacity(full_lobes / 2 + 1);
    paired.push(2.0 * acc.value());
    for m in 1..full_lobes {
        let a = y + m as f64;
        let (lobe, e) = piece(a, a + 1.0)?;
        acc.add(lobe);
        err += e;
        if m % 2 == 0 {
            paired.push(2.0 * acc.value());
        }
    }
    if reach > full_lobes as f64 {
        let (rest, e) = piece(y + full_lobes as f64, y + reach)?;
        acc.add(rest);
        err += e;
    }
    let start = y + reach;
    let (first, _) = piece(start, start.floor() + 1.0)?;
    let (second, _) = piece(start.floor() + 1.0, start.floor() + 2.0)?;
    let tail_estimate = 2.0 * (first + second).abs().max(first.abs().min(second.abs()));
    let value = 2.0 * acc.value();
    let out = BinomialIntegral {
        value,
        tail_estimate,
        quadrature_error: 2.0 * err,
        paired_partial_sums: paired,
    };
    if out.tail_estimate >= value.abs() {
        return Err(Error::Accuracy {
            what: format!("∫ binom({y}, x) dx truncated at T = {reach}"),
            value,
            estimate: out.tail_estimate,
        });
    }
    Ok(out)
}

/// `4 ∫₀^{π/2} √(a² sin²θ + b² cos²θ) dθ`.
pub fn ellipse_arc_length(a: f64, b: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    if !(a >= 0.0 && b >= 0.0) || a + b == 0.0 {
        return Err(Error::domain(
            "ellipse semi-axes must be non-negative and not both zero",
        ));
    }
    let out = integrate(
        |th: f64| (a * a * th.sin().powi(2) + b * b * th.cos().powi(2)).sqrt(),
        0.0,
        std::f64::consts::FRAC_PI_2,
        &cfg.quadrature(cfg.quad_abs_tol / 4.0),
    )?;
    Ok(4.0 * out.value)
}

/// Plain left-to-right compensated sum of `term(0..n)`.
pub fn brute_force_sum<F: FnMut(u64) -> f64>(mut term: F, n: u64) -> f64 {
    (0..n).map(&mut term).collect::<CompensatedSum>().value()
}
