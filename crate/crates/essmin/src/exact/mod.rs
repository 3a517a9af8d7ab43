//! Exact arithmetic layer: rationals, Gaussian rationals, valuations,
//! heights, and the finite-plus-archimedean functional
//!
//! ```text
//! delta(a, b) = sum_p sum_sigma log+ max(|sigma(a)|_p, |sigma(b)|_p)
//!             + sum_sigma log+ |sigma(a)|
//! ```
//!
//! which is the exactly-computable part of every upper bound produced by this
//! crate. Only denominator primes contribute to the finite sum, so it is a
//! short exact computation followed by one float log per term.

pub mod factor;
pub mod gaussian;
pub mod rational;

use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::value::ValueWithError;
use crate::{Error, Result};
use gaussian::{gaussian_valuations, GaussianRational};
use rational::valuation;

/// `delta` for rational parameters (one embedding).
///
/// The finite part is `sum_p m_p log p` with the exact integer exponent
/// `m_p = max(0, -v_p(a), -v_p(b))`; the archimedean part is `log+ |a|`.
pub fn delta(a: &BigRational, b: &BigRational) -> Result<ValueWithError> {
    if a.is_zero() {
        return Err(Error::Argument("delta requires a != 0".into()));
    }
    let mut value = 0.0f64;
    let mut terms = 0usize;
    for p in rational::prime_support(a, b)? {
        let mut m = -valuation(a, p);
        if !b.is_zero() {
            m = m.max(-valuation(b, p));
        }
        m = m.max(0);
        if m > 0 {
            value += m as f64 * (p as f64).ln();
            terms += 1;
        }
    }
    let arch = gaussian::rational_to_f64(&a.abs()).ln();
    if arch > 0.0 {
        value += arch;
        terms += 1;
    }
    Ok(ValueWithError::from_log_terms(value, terms))
}

/// `delta` for Gaussian parameters (both embeddings id and conj).
///
/// Requires consistent labeling of the split places between `a` and `b`;
/// the valuation profiles use one canonical Cornacchia generator per prime,
/// so the id/conj columns line up. The sum over both embeddings makes the
/// result independent of which generator was called `id`.
pub fn delta_gaussian(a: &GaussianRational, b: &GaussianRational) -> Result<ValueWithError> {
    if a.is_zero() {
        return Err(Error::Argument("delta requires a != 0".into()));
    }
    let pa = gaussian_valuations(a)?;
    let pb_entries;
    let pb = if b.is_zero() {
        None
    } else {
        pb_entries = gaussian_valuations(b)?;
        Some(pb_entries)
    };
    let mut primes: Vec<u64> = pa.entries.keys().copied().collect();
    if let Some(pb) = &pb {
        primes.extend(pb.entries.keys().copied());
    }
    primes.sort_unstable();
    primes.dedup();

    let mut value = 0.0f64;
    let mut terms = 0usize;
    for p in primes {
        let (va_id, va_conj) = pa.at(p);
        let (vb_id, vb_conj) = match &pb {
            Some(pb) => pb.at(p),
            None => (Rational64::zero(), Rational64::zero()),
        };
        let lp = (p as f64).ln();
        // per embedding: exponent of max(|sigma(a)|_p, |sigma(b)|_p) is
        // max(-v_a, -v_b), clamped at 0 by log+
        let e_id = (-va_id).max(-vb_id).max(Rational64::zero());
        let e_conj = (-va_conj).max(-vb_conj).max(Rational64::zero());
        // sum both embeddings before accumulating so the order of id/conj
        // cannot perturb the float result
        let e = e_id + e_conj;
        if e.is_positive() {
            value += e.to_f64().unwrap() * lp;
            terms += 1;
        }
    }
    let arch = a.abs().ln();
    if arch > 0.0 {
        value += 2.0 * arch;
        terms += 1;
    }
    Ok(ValueWithError::from_log_terms(value, terms))
}
