//! Adaptive Gauss–Legendre quadrature for circle means of `log+`.
//!
//! Everything archimedean in this crate reduces to one primitive:
//!
//! ```text
//! mean_log_plus(s, w) = (1/2π) ∫₀^{2π} log+ |s·e^{iθ} + w| dθ
//! ```
//!
//! The integrand is analytic except where `|s e^{iθ} + w| = 1` (the kinks of
//! `log+`), and those angles solve `cos(θ − arg w) = (1 − s² − |w|²)/(2s|w|)`
//! in closed form. We split the circle at the kinks, discard the sub-arcs
//! where the modulus stays below 1 (they contribute exactly 0), and integrate
//! the remaining analytic pieces with recursively bisected 15-point
//! Gauss–Legendre panels, so convergence is spectral.
//!
//! Two regimes short-circuit to exact closed forms: when the whole circle
//! `s e^{iθ} + w` stays inside the closed unit disc the mean is 0, and when it
//! stays outside, the mean value property of `log` gives `log max(s, |w|)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::value::ValueWithError;
use crate::{Error, Result};

const PANEL: usize = 15;
const MAX_DEPTH: u32 = 48;
const TWO_PI: f64 = 2.0 * PI;

/// Legendre polynomial P_n and its derivative at x, by the three-term
/// recurrence (k+1)·P_{k+1} = (2k+1)·x·P_k − k·P_{k−1}.
fn legendre_value_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    // derivative from P_n and P_{n−1}: (x²−1)·P'_n = n(x·P_n − P_{n−1})
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of 15-point Gauss–Legendre on [−1, 1], computed once by
/// Newton iteration from the Chebyshev initial guesses.
fn gauss_legendre_15() -> &'static ([f64; PANEL], [f64; PANEL]) {
    static CACHE: OnceLock<([f64; PANEL], [f64; PANEL])> = OnceLock::new();
    CACHE.get_or_init(|| {
        let n = PANEL;
        let mut nodes = [0.0f64; PANEL];
        let mut weights = [0.0f64; PANEL];
        for i in 0..(n + 1) / 2 {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_value_deriv(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_value_deriv(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // i = 0 is the largest root; store symmetrically
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        // the middle node of an odd rule is exactly 0
        nodes[n / 2] = 0.0;
        (nodes, weights)
    })
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    let (nodes, weights) = gauss_legendre_15();
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for i in 0..PANEL {
        acc += weights[i] * f(c + h * nodes[i]);
    }
    acc * h
}

/// Recursive bisection: accept a panel when refining changes it by at most
/// the local budget. Returns the integral and accumulates an error estimate.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    budget: f64,
    depth: u32,
    err_acc: &mut f64,
) -> f64 {
    let whole = gl_panel(f, lo, hi);
    let mid = 0.5 * (lo + hi);
    let left = gl_panel(f, lo, mid);
    let right = gl_panel(f, mid, hi);
    let diff = (left + right - whole).abs();
    if diff <= budget || depth >= MAX_DEPTH {
        *err_acc += diff;
        left + right
    } else {
        adaptive(f, lo, mid, 0.5 * budget, depth + 1, err_acc)
            + adaptive(f, mid, hi, 0.5 * budget, depth + 1, err_acc)
    }
}

fn require_finite(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("{what} must be finite, got {x}")))
    }
}

/// `(1/2π) ∫₀^{2π} log+ |scale·e^{iθ} + shift| dθ`, with `abs_error ≤ tol`.
///
/// Inputs are canonicalized first — the mean is invariant under
/// `θ → θ + const`, `θ → −θ`, and `θ → θ + π`, so `scale` can be replaced by
/// `|scale|` and `shift` by `|Re shift| + i·|Im shift|`. The canonical form
/// makes conjugate inputs produce bit-identical results.
pub fn mean_log_plus(scale: f64, shift: Complex64, tol: f64) -> Result<ValueWithError> {
    require_finite(scale, "scale")?;
    require_finite(shift.re, "shift.re")?;
    require_finite(shift.im, "shift.im")?;
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("tol must be positive, got {tol}")));
    }
    let s = scale.abs();
    let w = Complex64::new(shift.re.abs(), shift.im.abs());
    let wn = w.norm();

    if s == 0.0 {
        // constant integrand log+ |w|
        return Ok(ValueWithError::from_log_terms(wn.ln().max(0.0), 1));
    }
    if wn == 0.0 {
        return Ok(ValueWithError::from_log_terms(s.ln().max(0.0), 1));
    }
    if s + wn <= 1.0 {
        // the circle stays inside the closed unit disc: log+ vanishes
        return Ok(ValueWithError::exact(0.0));
    }
    if (s - wn).abs() >= 1.0 {
        // the circle stays outside the unit disc, so log+ = log everywhere
        // and the mean value property gives the mean of log |s e^{iθ} + w|
        // exactly: log max(s, |w|).
        return Ok(ValueWithError::from_log_terms(s.max(wn).ln(), 1));
    }

    // |s e^{iθ} + w|² = s² + |w|² + 2 s |w| cos(θ − arg w)
    let s2w2 = s * s + wn * wn;
    let two_swn = 2.0 * s * wn;
    let arg_w = w.im.atan2(w.re); // in [0, π/2] after canonicalization
    let modulus_sq = move |theta: f64| s2w2 + two_swn * (theta - arg_w).cos();
    let integrand = move |theta: f64| (0.5 * modulus_sq(theta).ln()).max(0.0);

    let cstar = ((1.0 - s2w2) / two_swn).clamp(-1.0, 1.0);
    let ak = cstar.acos();
    let k1 = (arg_w - ak).rem_euclid(TWO_PI);
    let k2 = (arg_w + ak).rem_euclid(TWO_PI);
    let (c1, c2) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };

    let segments = [(0.0, c1), (c1, c2), (c2, TWO_PI)];
    let mut active: Vec<(f64, f64)> = Vec::with_capacity(3);
    let mut active_len = 0.0;
    for &(lo, hi) in &segments {
        if hi - lo <= 0.0 {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        if modulus_sq(mid) > 1.0 {
            active.push((lo, hi));
            active_len += hi - lo;
        }
    }
    if active.is_empty() {
        return Ok(ValueWithError::exact(0.0));
    }

    let total_budget = 0.5 * tol * TWO_PI;
    let mut integral = 0.0;
    let mut err_acc = 0.0;
    for &(lo, hi) in &active {
        let budget = total_budget * (hi - lo) / active_len;
        integral += adaptive(&integrand, lo, hi, budget, 0, &mut err_acc);
    }
    let value = integral / TWO_PI;
    let abs_error = err_acc / TWO_PI + 1e-15;
    Ok(ValueWithError::new(value, abs_error))
}
