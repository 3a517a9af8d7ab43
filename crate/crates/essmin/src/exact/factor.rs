//! Integer factorization sized for desk-scale inputs: a small-prime sieve,
//! trial division, and a deterministic Miller–Rabin primality test. Anything
//! whose magnitude does not fit below 2^63 is rejected loudly rather than
//! silently churning.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use crate::{Error, Result};

/// Trial-division ceiling used by [`factorize`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Hard input ceiling: magnitudes at or above 2^63 are refused.
pub const MAGNITUDE_LIMIT: u64 = 1 << 63;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = DEFAULT_TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        if n >= 1 {
            sieve[1] = false;
        }
        let mut i = 2usize;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 (the standard 12-witness set covers the
/// full range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor `|n|` into sorted `(prime, exponent)` pairs.
///
/// Trial-divides by primes up to `trial_bound` (capped at
/// [`DEFAULT_TRIAL_BOUND`]); a remaining cofactor is accepted if prime,
/// otherwise the bound was genuinely insufficient and an error names it.
/// `|n| >= 2^63` and `n = 0` are rejected.
pub fn factorize_with_bound(n: &BigInt, trial_bound: u64) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Argument("cannot factor 0".into()));
    }
    let mag = n.abs();
    let mut m = mag.to_u64().ok_or_else(|| {
        Error::FactorBound(format!("|{n}| does not fit below 2^63"))
    })?;
    if m >= MAGNITUDE_LIMIT {
        return Err(Error::FactorBound(format!("|{n}| is not below 2^63")));
    }
    let bound = trial_bound.min(DEFAULT_TRIAL_BOUND);
    let mut out: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p > bound || p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if m > 1 {
        if m <= bound.saturating_mul(bound) || is_prime_u64(m) {
            // no prime <= bound divides m, so m <= bound^2 forces primality
            out.push((m, 1));
        } else {
            return Err(Error::FactorBound(format!(
                "cofactor {m} is composite with no prime factor <= {bound}"
            )));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// [`factorize_with_bound`] at the default trial bound.
pub fn factorize(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    factorize_with_bound(n, DEFAULT_TRIAL_BOUND)
}
