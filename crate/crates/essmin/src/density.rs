//! Density thresholds: the value above which the family's height image is
//! dense.
//!
//! The functional Γ_{a,b}(x, r⃗) combines an exact finite-place sum over the
//! prime support of (a, b) with two circle means:
//!
//! ```text
//! Γ = Σᵢ [log⁺ rᵢ + log⁺ max(|a|_{pᵢ}·rᵢ, |b|_{pᵢ})]
//!     + M(1/R, x) + M(a/R, b + a·x),        R = Π rᵢ,
//! ```
//!
//! where M(s, w) is the mean of log⁺|s·e^{iθ} + w| over the circle. Every
//! value of Γ is a density threshold: heights of the family are dense in
//! [Γ, ∞). Minimizing over x (radii held at 1) gives the best threshold this
//! functional can certify. With unit radii and |a| = 1 the functional
//! coincides with the upper-bound functional Ω.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::mean_log_plus;
use crate::exact::gaussian::rational_to_f64;
use crate::exact::rational::{padic_abs, prime_support};
use crate::search::scan_then_golden;
use crate::upper::normalize_problem;
use crate::value::ValueWithError;
use crate::{Error, Result};
use num_complex::Complex64;

/// Which shift enters the second circle mean. The scaled-shift form
/// (b + a·x) is the authoritative definition; the plain-shift form (b + x)
/// is kept for comparison and agrees when |a| = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaVariant {
    /// Second mean is M(a/R, b + a·x).
    AxShift,
    /// Second mean is M(a/R, b + x).
    XShift,
}

/// A density threshold with the minimizing x and the radii used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityResult {
    pub threshold: ValueWithError,
    #[serde(with = "crate::wire::f64_string")]
    pub x_star: f64,
    #[serde(with = "crate::wire::rational_vec_string")]
    pub radii: Vec<BigRational>,
    pub interval_note: String,
}

/// The exact finite-place part of Γ plus the number of log evaluations it
/// took (for the error budget).
fn finite_part(
    a: &BigRational,
    b: &BigRational,
    primes: &[u64],
    radii: &[BigRational],
) -> Result<(f64, usize)> {
    let mut value = 0.0;
    let mut terms = 0;
    for (p, r) in primes.iter().zip(radii) {
        if !r.is_positive() {
            return Err(Error::Argument(format!("radii must be positive, got {r}")));
        }
        if r > &BigRational::one() {
            value += rational_to_f64(r).ln();
            terms += 1;
        }
        let scaled = padic_abs(a, *p)? * r;
        let other = padic_abs(b, *p)?;
        let max = if scaled >= other { scaled } else { other };
        if max > BigRational::one() {
            value += rational_to_f64(&max).ln();
            terms += 1;
        }
    }
    Ok((value, terms))
}

/// Γ at a given x with explicit radii (one per support prime, in order).
pub fn gamma_with_variant(
    a: &BigRational,
    b: &BigRational,
    x: f64,
    radii: &[BigRational],
    variant: GammaVariant,
    tol: f64,
) -> Result<ValueWithError> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    if !x.is_finite() {
        return Err(Error::Argument("x must be finite".into()));
    }
    let primes = prime_support(a, b)?;
    if primes.len() != radii.len() {
        return Err(Error::Argument(format!(
            "expected {} radii for the prime support {:?}, got {}",
            primes.len(),
            primes,
            radii.len()
        )));
    }
    let (fin, terms) = finite_part(a, b, &primes, radii)?;
    let mut r_total = BigRational::one();
    for r in radii {
        r_total *= r;
    }
    let rf = rational_to_f64(&r_total);
    let af = rational_to_f64(a);
    let bf = rational_to_f64(b);
    let shift = match variant {
        GammaVariant::AxShift => bf + af * x,
        GammaVariant::XShift => bf + x,
    };
    let m1 = mean_log_plus(1.0 / rf, Complex64::new(x, 0.0), tol)?;
    let m2 = mean_log_plus(af / rf, Complex64::new(shift, 0.0), tol)?;
    Ok(ValueWithError::from_log_terms(fin, terms).add(m1).add(m2))
}

/// Γ in its authoritative (scaled-shift) form.
pub fn gamma(
    a: &BigRational,
    b: &BigRational,
    x: f64,
    radii: &[BigRational],
    tol: f64,
) -> Result<ValueWithError> {
    gamma_with_variant(a, b, x, radii, GammaVariant::AxShift, tol)
}

/// Best density threshold: Γ minimized over x, radii held fixed (all ones
/// when `radii` is `None`). Signs of (a, b) are normalized away first; the
/// threshold is invariant under them.
pub fn density_threshold(
    a: &BigRational,
    b: &BigRational,
    radii: Option<Vec<BigRational>>,
    tol: f64,
) -> Result<DensityResult> {
    let (a, b) = normalize_problem(a, b)?;
    let primes = prime_support(&a, &b)?;
    let radii = radii.unwrap_or_else(|| vec![BigRational::one(); primes.len()]);
    let ratio = rational_to_f64(&(&b / &a));

    let objective = |x: f64| -> f64 {
        gamma(&a, &b, x, &radii, tol).map(|v| v.value).unwrap_or(f64::INFINITY)
    };
    let mut best_x = -0.5 * ratio;
    let mut best_v = objective(best_x);
    for cand in [0.0, -0.5 * (1.0 + ratio)] {
        let v = objective(cand);
        if v < best_v {
            best_x = cand;
            best_v = v;
        }
    }
    let (xg, vg) = scan_then_golden(objective, -(1.0 + ratio), 1.0, 96, 1e-10);
    if vg < best_v {
        best_x = xg;
    }
    let threshold = gamma(&a, &b, best_x, &radii, tol)?;
    Ok(DensityResult {
        threshold,
        x_star: best_x,
        radii,
        interval_note: "image dense in [threshold, ∞)".into(),
    })
}

/// Certified threshold enclosure for the wide-ratio regime.
///
/// Requires |a| ≥ 1, |b| − |a| > 1 and |b/a| ≥ 4 (checked exactly); then
/// the density threshold lies in [log((B−1)/A), log(B/A)] with A = |a|,
/// B = |b|. The upper endpoint is the large-ratio closed form of the
/// bound functional; the lower endpoint matches the separated-modulus
/// closed-form lower bound.
pub fn interval_thm43(a: &BigRational, b: &BigRational) -> Result<(f64, f64)> {
    let (a, b) = normalize_problem(a, b)?;
    let one = BigRational::one();
    if a < one {
        return Err(Error::Precondition(format!(
            "requires |a| >= 1, got |a| = {a}"
        )));
    }
    if &b - &a <= one {
        return Err(Error::Precondition(format!(
            "requires |b| - |a| > 1, got |b| - |a| = {}",
            &b - &a
        )));
    }
    if &b / &a < BigRational::from_integer(4.into()) {
        return Err(Error::Precondition(format!(
            "requires |b/a| >= 4, got |b/a| = {}",
            &b / &a
        )));
    }
    let lower = rational_to_f64(&((&b - &one) / &a)).ln();
    let upper = rational_to_f64(&(&b / &a)).ln();
    Ok((lower, upper))
}
