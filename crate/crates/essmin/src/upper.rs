//! Upper bounds for the essential minimum of h_{a,b}.
//!
//! The bound functional is `Ω_{a,b}(t) = Δ(a,b) + φ(t) + φ(t + b/a)` for
//! rational parameters; any value of t gives a valid upper bound, so the
//! minimizer over t is reported. Three regimes have exact values: b = 0
//! collapses to the height of a, ratios b/a ≥ 4 give Δ + log(b/a), and for
//! 0 < b/a < 4 the centered series provides a certified value at t = −b/2a.
//! Gaussian parameters with both entries non-real get the analogous
//! closed-form combination of φ-means.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::{phi, series_omega_center_auto};
use crate::exact::gaussian::{rational_to_f64, GaussianRational};
use crate::exact::rational::weil_height;
use crate::exact::{delta, delta_gaussian};
use crate::search::scan_then_golden;
use crate::value::ValueWithError;
use crate::{Error, Result};

/// How an upper bound was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperMethod {
    /// b = 0: the bound is exactly the height of a.
    ClosedFormB0,
    /// b/a ≥ 4: the bound is exactly Δ(a,b) + log(b/a).
    ClosedFormLargeRatio,
    /// 0 < b/a < 4: certified series at the center t = −b/2a.
    SeriesCenter,
    /// Quadrature minimization over t (error is an estimate, not certified).
    QuadratureMin,
}

/// An upper bound with the t it was achieved at and how it was certified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperBoundResult {
    /// Bound value; `value + abs_error` is the number to quote.
    pub value: ValueWithError,
    /// Argument of the functional realizing the bound.
    #[serde(with = "crate::wire::f64_string")]
    pub t_star: f64,
    /// Evaluation route.
    pub method: UpperMethod,
    /// True when abs_error is a rigorous enclosure radius (closed forms and
    /// series); false when it is an adaptive quadrature estimate.
    pub certified: bool,
}

/// Reduce to a > 0, b ≥ 0: the essential minimum is invariant under sign
/// flips of either parameter. Errors on a = 0 (degenerate family).
pub fn normalize_problem(
    a: &BigRational,
    b: &BigRational,
) -> Result<(BigRational, BigRational)> {
    if a.is_zero() {
        return Err(Error::Argument(
            "the parameter a must be nonzero (the family degenerates to a constant shift)"
                .into(),
        ));
    }
    Ok((a.abs(), b.abs()))
}

/// `Ω_{a,b}(t) = Δ(a,b) + φ(t) + φ(t + b/a)` for a > 0, b ≥ 0.
pub fn omega(a: &BigRational, b: &BigRational, t: f64, tol: f64) -> Result<ValueWithError> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::Domain(
            "omega expects a normalized problem: a > 0, b >= 0".into(),
        ));
    }
    let ratio = rational_to_f64(&(b / a));
    let d = delta(a, b)?;
    let p1 = phi(t, tol)?;
    let p2 = phi(t + ratio, tol)?;
    Ok(d.add(p1).add(p2))
}

fn quadrature_candidates(
    a: &BigRational,
    b: &BigRational,
    tol: f64,
) -> Result<(f64, ValueWithError)> {
    let ratio = rational_to_f64(&(b / a));
    let d = delta(a, b)?;
    let arch = |t: f64| {
        let p1 = phi(t, tol).map(|v| v.value).unwrap_or(f64::INFINITY);
        let p2 = phi(t + ratio, tol).map(|v| v.value).unwrap_or(f64::INFINITY);
        p1 + p2
    };
    let mut best_t = -0.5 * ratio;
    let mut best_v = arch(best_t);
    let v0 = arch(0.0);
    if v0 < best_v {
        best_t = 0.0;
        best_v = v0;
    }
    let (xg, vg) = scan_then_golden(arch, -(1.0 + ratio), 1.0, 96, 1e-10);
    if vg < best_v {
        best_t = xg;
        best_v = vg;
    }
    let total = omega(a, b, best_t, tol)?;
    debug_assert!((total.value - (d.value + best_v)).abs() < 1e-9);
    Ok((best_t, total))
}

/// Best available upper bound over t, after normalizing signs.
///
/// Dispatch: b = 0 → exact height of a; b/a ≥ 4 → exact Δ + log(b/a);
/// otherwise quadrature search over t ∈ [−(1 + b/a), 1], replaced by the
/// certified series value at t = −b/2a whenever the series total is within
/// 2·tol of the best quadrature value (ties resolve toward the certified
/// number).
pub fn omega_min(a: &BigRational, b: &BigRational, tol: f64, series_cap: usize) -> Result<UpperBoundResult> {
    let (a, b) = normalize_problem(a, b)?;
    if b.is_zero() {
        let h = weil_height(&a)?;
        return Ok(UpperBoundResult {
            value: ValueWithError::from_log_terms(h.value(), 2),
            t_star: 0.0,
            method: UpperMethod::ClosedFormB0,
            certified: true,
        });
    }
    let ratio = &b / &a;
    if ratio >= BigRational::from_integer(4.into()) {
        let d = delta(&a, &b)?;
        let log_ratio = rational_to_f64(&ratio).ln();
        let value = d.add(ValueWithError::from_log_terms(log_ratio, 1));
        return Ok(UpperBoundResult {
            value,
            t_star: 0.0,
            method: UpperMethod::ClosedFormLargeRatio,
            certified: true,
        });
    }

    // 0 < b/a < 4: compare the certified series at the center with the
    // quadrature minimum over the bracket.
    let (t_quad, quad_total) = quadrature_candidates(&a, &b, tol)?;
    let d = delta(&a, &b)?;
    let series = series_omega_center_auto(&a, &b, tol, series_cap)?;
    let series_value = ValueWithError::new(
        d.value + series.partial_sum,
        d.abs_error + series.tail_bound + 1e-13,
    );
    let half_ratio = -0.5 * rational_to_f64(&ratio);
    if series_value.upper() <= quad_total.upper() + 2.0 * tol {
        Ok(UpperBoundResult {
            value: series_value,
            t_star: half_ratio,
            method: UpperMethod::SeriesCenter,
            certified: true,
        })
    } else {
        Ok(UpperBoundResult {
            value: quad_total,
            t_star: t_quad,
            method: UpperMethod::QuadratureMin,
            certified: false,
        })
    }
}

/// Upper bound for Gaussian parameters with both a and b non-real:
/// `Δ(a,b) + φ(Re(b/a)) + 2·φ(Im(b/a))`.
pub fn upper_bound_gaussian(
    a: &GaussianRational,
    b: &GaussianRational,
    tol: f64,
) -> Result<UpperBoundResult> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    if a.is_real() || b.is_real() {
        return Err(Error::Argument(
            "the Gaussian bound requires both parameters to have nonzero imaginary part; \
             use the rational path for real inputs"
                .into(),
        ));
    }
    let ratio = b.div(a)?;
    let re = rational_to_f64(ratio.re());
    let im = rational_to_f64(ratio.im());
    let d = delta_gaussian(a, b)?;
    let p_re = phi(re, tol)?;
    let p_im = phi(im, tol)?;
    let value = d.add(p_re).add(p_im).add(p_im);
    Ok(UpperBoundResult {
        value,
        t_star: -re,
        method: UpperMethod::QuadratureMin,
        certified: false,
    })
}
