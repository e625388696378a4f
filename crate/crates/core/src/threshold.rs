//! Threshold algebra for `L^p` monotonicity along the flow.
//!
//! Along a solution, `d/dt ∫u^p ≤ 0` follows from the non-local inequality
//! as soon as `α ≤ h(p) = 4(p-1)/(p+1)² + 1/p`. The local theory needs
//! `p > 3/2`, and `h(3/2) = 74/75`.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Smallest exponent the local theory permits.
pub const BASE_EXPONENT: f64 = 1.5;

/// Upper end of the exponent search in [`admissible_gamma`]. `h(p) → 0` as
/// `p → ∞`, so nothing is gained past a modest cap.
pub const SEARCH_CAP: f64 = 8.0;

/// `h(3/2)` as a float.
pub const ALPHA_CRITICAL: f64 = 74.0 / 75.0;

pub fn h(p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(4.0 * (p - 1.0) / ((p + 1.0) * (p + 1.0)) + 1.0 / p)
}

/// `h` in exact rational arithmetic.
pub fn h_exact(p: Ratio<i64>) -> Result<Ratio<i64>> {
    if p <= Ratio::from_integer(0) {
        return Err(invalid(format!("exponent must be positive, got {p}")));
    }
    let one = Ratio::from_integer(1);
    let four = Ratio::from_integer(4);
    Ok(four * (p - one) / ((p + one) * (p + one)) + one / p)
}

/// `-(4/p)((p-1)/p) + (α - 1/p)((p+1)/p)²`; non-positive exactly when
/// `α ≤ h(p)`.
pub fn monotonicity_coefficient(p: f64, alpha: f64) -> Result<f64> {
    check_exponent(p)?;
    let q = (p + 1.0) / p;
    Ok(-(4.0 / p) * ((p - 1.0) / p) + (alpha - 1.0 / p) * q * q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub alpha: f64,
    /// Largest `p ∈ (3/2, SEARCH_CAP]` with `h(p) ≥ α`.
    pub p_star: f64,
    pub gamma: f64,
    /// Right endpoint of the decay range `(1, q_max]`.
    pub q_max: f64,
}

impl ThresholdResult {
    /// The exponent `3/2 + γ` whose norm is non-increasing.
    pub fn exponent(&self) -> f64 {
        BASE_EXPONENT + self.gamma
    }
}

/// Finds `γ > 0` with `h(3/2 + γ) > α`.
///
/// `h` is decreasing on `[3/2, ∞)`, so the admissible exponents form an
/// interval `[3/2, p_star]`; `p_star` is bisected and `γ` is placed halfway
/// between `3/2` and `p_star`.
pub fn admissible_gamma(alpha: f64) -> Result<ThresholdResult> {
    if !(alpha >= 0.0) {
        return Err(invalid(format!("alpha must be non-negative, got {alpha}")));
    }
    if alpha >= ALPHA_CRITICAL {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} is not below 74/75; no admissible exponent above 3/2"
        )));
    }
    let q_max = decay_q_range().upper;
    let feasible = |p: f64| 4.0 * (p - 1.0) / ((p + 1.0) * (p + 1.0)) + 1.0 / p >= alpha;

    let p_star = if feasible(SEARCH_CAP) {
        SEARCH_CAP
    } else {
        let (mut lo, mut hi) = (BASE_EXPONENT, SEARCH_CAP);
        // Bisect to the floating-point limit; the 1e-12 target is reached
        // after ~43 halvings and the rest only tightens it.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if feasible(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };

    let gamma = 0.5 * (p_star - BASE_EXPONENT);
    if !(gamma > 0.0) || !feasible(BASE_EXPONENT + gamma) {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} is too close to 74/75 to resolve a positive gamma"
        )));
    }
    Ok(ThresholdResult {
        alpha,
        p_star,
        gamma,
        q_max,
    })
}

/// A half-open interval `(lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OpenClosedInterval {
    pub lower: f64,
    pub upper: f64,
}

impl OpenClosedInterval {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x <= self.upper
    }
}

/// Exponents `q` whose norms decay for every `α < 74/75`: `(1, 75/74]`.
pub fn decay_q_range() -> OpenClosedInterval {
    OpenClosedInterval {
        lower: 1.0,
        upper: 75.0 / 74.0,
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("exponent must be positive, got {p}")))
    }
}
