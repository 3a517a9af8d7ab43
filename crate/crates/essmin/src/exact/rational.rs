//! Exact rational arithmetic for the height pipeline: p-adic absolute values,
//! prime supports, and the logarithmic Weil height
//! `h(m/n) = log max(|m|, n)` of a reduced fraction.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{factorize, is_prime_u64};
use crate::value::HeightValue;
use crate::{Error, Result};

/// Parse a rational literal: an optional sign, a decimal integer, and an
/// optional `/denominator`. ASCII only; locale-independent.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let err = |reason: &str| Error::Parse { token: s.to_string(), reason: reason.to_string() };
    if t.is_empty() {
        return Err(err("empty rational literal"));
    }
    if !t.is_ascii() {
        return Err(err("non-ASCII character in rational literal"));
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| err("numerator is not a decimal integer"))?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err("denominator is not a decimal integer"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// p-adic valuation of a nonzero integer: the exponent of `p` in `n`.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if r.is_zero() {
            m = q;
            v += 1;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(q: &BigRational, p: u64) -> i64 {
    int_valuation(q.numer(), p) - int_valuation(q.denom(), p)
}

/// Exact p-adic absolute value `|q|_p = p^(-v_p(q))` as a rational.
/// `|0|_p = 0`. Errors if `p` is not prime.
pub fn padic_abs(q: &BigRational, p: u64) -> Result<BigRational> {
    if !is_prime_u64(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    if q.is_zero() {
        return Ok(BigRational::zero());
    }
    let v = valuation(q, p);
    let pw = BigInt::from(p).pow(v.unsigned_abs() as u32);
    Ok(if v >= 0 {
        BigRational::new(BigInt::one(), pw)
    } else {
        BigRational::new(pw, BigInt::one())
    })
}

/// Sorted primes dividing the denominator of `a` or of `b` (the places where
/// `max(|a|_p, |b|_p) > 1`). `a` must be nonzero; `b = 0` is allowed.
pub fn prime_support(a: &BigRational, b: &BigRational) -> Result<Vec<u64>> {
    if a.is_zero() {
        return Err(Error::Argument("prime support requires a != 0".into()));
    }
    let mut primes: Vec<u64> = factorize(a.denom())?.into_iter().map(|(p, _)| p).collect();
    if !b.is_zero() {
        primes.extend(factorize(b.denom())?.into_iter().map(|(p, _)| p));
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Natural log of a positive big integer.
pub(crate) fn ln_bigint(n: &BigUint) -> f64 {
    let x = n.to_f64().unwrap_or(f64::INFINITY);
    if x.is_finite() {
        x.ln()
    } else {
        // fall back to bit-length scaling for monster inputs
        let bits = n.bits();
        let shift = bits.saturating_sub(64);
        let head = (n >> shift).to_f64().unwrap_or(f64::MAX);
        head.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Logarithmic Weil height `h(m/n) = log max(|m|, n)` of a reduced fraction;
/// `h(0) = 0`.
pub fn weil_height(q: &BigRational) -> Result<HeightValue> {
    if q.is_zero() {
        return HeightValue::new(0.0);
    }
    let m = q.numer().abs().to_biguint().expect("abs is non-negative");
    let n = q.denom().to_biguint().expect("reduced denominator is positive");
    let max = if m >= n { m } else { n };
    HeightValue::new(ln_bigint(&max))
}
