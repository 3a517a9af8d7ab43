//! Exact arithmetic over Q(i): Gaussian rationals, their valuations above
//! each rational prime, and the logarithmic Weil height.
//!
//! A prime p splits in Z[i] when p = 1 mod 4 (two conjugate places, found by
//! a Cornacchia-style search for x^2 + y^2 = p), stays inert when
//! p = 3 mod 4 (one place, valuation half the norm valuation), and ramifies
//! at p = 2 (valuations in (1/2)Z through the uniformizer 1 + i).

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use super::factor::{factorize, is_prime_u64};
use super::rational::{int_valuation, ln_bigint, parse_rational};
use crate::value::HeightValue;
use crate::{Error, Result};

/// An element of Q(i), kept as a pair of reduced big rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self { re: BigRational::from(BigInt::from(re)), im: BigRational::from(BigInt::from(im)) }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Field norm N(x + yi) = x^2 + y^2 (a non-negative rational).
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Complex modulus as f64.
    pub fn abs(&self) -> f64 {
        let n = self.norm();
        rational_to_f64(&n).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Argument("division by zero in Q(i)".into()));
        }
        let n = other.norm();
        let c = other.conj();
        let p = self.mul(&c);
        Ok(Self { re: p.re / n.clone(), im: p.im / n })
    }

    /// f64 complex image, one rounding per component.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl std::fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// f64 conversion of a big rational with one final rounding.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // extreme magnitudes: scale through logs
        if q.is_zero() {
            0.0
        } else {
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            let ln = ln_bigint(&q.numer().abs().to_biguint().unwrap())
                - ln_bigint(&q.denom().to_biguint().unwrap());
            sign * ln.exp()
        }
    })
}

/// Parse `x`, `yi`, or `x+yi` with rational components (e.g. `1/2+3/4i`,
/// `-i`, `2i`, `7/15`).
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let t = s.trim();
    let err = |reason: &str| Error::Parse { token: s.to_string(), reason: reason.to_string() };
    if t.is_empty() {
        return Err(err("empty literal"));
    }
    if !t.is_ascii() {
        return Err(err("non-ASCII character"));
    }
    if !t.ends_with('i') {
        return Ok(GaussianRational::new(parse_rational(t)?, BigRational::zero()));
    }
    let body = &t[..t.len() - 1];
    // split at the last top-level sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with('/'))
        .map(|(i, _)| i)
        .last();
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_str {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    let re = parse_rational(re_str)?;
    Ok(GaussianRational::new(re, im))
}

/// Valuations of a nonzero Gaussian rational above each relevant prime.
///
/// Entry `(p, (v_id, v_conj))` gives the additive valuations of the fixed
/// embedding and of its complex conjugate: `|sigma(alpha)|_p = p^(-v_sigma)`.
/// Exponents are exact rationals; only the ramified prime 2 produces
/// half-integers. Primes where both valuations vanish are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationProfile {
    pub entries: BTreeMap<u64, (Rational64, Rational64)>,
}

impl ValuationProfile {
    /// Valuation pair at `p` (zero when absent).
    pub fn at(&self, p: u64) -> (Rational64, Rational64) {
        self.entries
            .get(&p)
            .copied()
            .unwrap_or((Rational64::zero(), Rational64::zero()))
    }
}

/// A Gaussian integer with big components.
#[derive(Debug, Clone)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_divisible_hint(&self) -> bool {
        !(self.re.is_zero() && self.im.is_zero())
    }
}

/// Multiplicity of the split prime `pi = x0 + y0*i` (above p) in `g`.
fn split_valuation(g: &GaussInt, x0: u64, y0: u64, p: u64) -> i64 {
    debug_assert!(g.is_divisible_hint());
    let (x0, y0, p) = (BigInt::from(x0), BigInt::from(y0), BigInt::from(p));
    let mut re = g.re.clone();
    let mut im = g.im.clone();
    let mut v = 0i64;
    loop {
        // g / pi = g * conj(pi) / p
        let nre = &re * &x0 + &im * &y0;
        let nim = &im * &x0 - &re * &y0;
        if (&nre % &p).is_zero() && (&nim % &p).is_zero() {
            re = nre / &p;
            im = nim / &p;
            v += 1;
        } else {
            return v;
        }
    }
}

/// Multiplicity of 1 + i in `g`.
fn ramified_valuation(g: &GaussInt) -> i64 {
    debug_assert!(g.is_divisible_hint());
    let two = BigInt::from(2);
    let mut re = g.re.clone();
    let mut im = g.im.clone();
    let mut v = 0i64;
    loop {
        // g / (1+i) = g * (1-i) / 2
        let nre = &re + &im;
        let nim = &im - &re;
        if (&nre % &two).is_zero() {
            re = nre / &two;
            im = nim / &two;
            v += 1;
        } else {
            return v;
        }
    }
}

/// Solve x^2 + y^2 = p for a prime p = 1 mod 4; returns `(x, y)` with
/// `x > y >= 1` (the canonical generator of one place above p).
pub fn cornacchia_prime(p: u64) -> Result<(u64, u64)> {
    if !is_prime_u64(p) || p % 4 != 1 {
        return Err(Error::Argument(format!("{p} is not a prime = 1 mod 4")));
    }
    // square root of -1 mod p through a quadratic non-residue
    let pow = |mut b: u128, mut e: u128| -> u128 {
        let m = p as u128;
        let mut acc = 1u128;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    };
    let mut t = 0u128;
    for a in 2..p {
        if pow(a as u128, (p as u128 - 1) / 2) == p as u128 - 1 {
            t = pow(a as u128, (p as u128 - 1) / 4);
            break;
        }
    }
    // descending Euclid until the remainder drops below sqrt(p)
    let mut r0 = p;
    let mut r1 = t as u64;
    while (r1 as u128) * (r1 as u128) >= p as u128 {
        let r = r0 % r1;
        r0 = r1;
        r1 = r;
        debug_assert!(r1 > 0);
    }
    let x = r1;
    let y2 = p - x * x;
    let mut y = (y2 as f64).sqrt().round() as u64;
    while y > 0 && (y as u128) * (y as u128) > y2 as u128 {
        y -= 1;
    }
    while ((y + 1) as u128) * ((y + 1) as u128) <= y2 as u128 {
        y += 1;
    }
    if (y as u128) * (y as u128) != y2 as u128 {
        return Err(Error::Internal(format!("cornacchia failed for {p}")));
    }
    Ok(if x >= y { (x, y) } else { (y, x) })
}

/// Write alpha as (u + v i) / d with integer u, v and positive integer d.
fn integral_form(alpha: &GaussianRational) -> (GaussInt, BigInt) {
    let d = num_integer::Integer::lcm(alpha.re.denom(), alpha.im.denom());
    let u = alpha.re.numer() * (&d / alpha.re.denom());
    let v = alpha.im.numer() * (&d / alpha.im.denom());
    (GaussInt { re: u, im: v }, d)
}

/// Compute the [`ValuationProfile`] of a nonzero alpha in Q(i).
pub fn gaussian_valuations(alpha: &GaussianRational) -> Result<ValuationProfile> {
    if alpha.is_zero() {
        return Err(Error::Argument("valuations require alpha != 0".into()));
    }
    let (g, d) = integral_form(alpha);
    let norm_int = &g.re * &g.re + &g.im * &g.im; // = N(alpha) * d^2
    let mut primes: Vec<u64> = factorize(&norm_int)?.into_iter().map(|(p, _)| p).collect();
    primes.extend(factorize(&d)?.into_iter().map(|(p, _)| p));
    primes.sort_unstable();
    primes.dedup();

    let mut entries = BTreeMap::new();
    for p in primes {
        let vd = int_valuation(&d, p);
        let (v_id, v_conj) = match p % 4 {
            1 => {
                let (x0, y0) = cornacchia_prime(p)?;
                let vi = split_valuation(&g, x0, y0, p) - vd;
                let conj = GaussInt { re: g.re.clone(), im: -g.im.clone() };
                let vc = split_valuation(&conj, x0, y0, p) - vd;
                (Rational64::from_integer(vi), Rational64::from_integer(vc))
            }
            3 => {
                let vn = int_valuation(&norm_int, p) - 2 * vd;
                debug_assert!(vn % 2 == 0, "inert norm valuation must be even");
                let v = Rational64::from_integer(vn / 2);
                (v, v)
            }
            _ => {
                // p = 2, ramified through 1 + i
                let v = ramified_valuation(&g) - 2 * vd;
                let half = Rational64::new(v, 2);
                (half, half)
            }
        };
        if !v_id.is_zero() || !v_conj.is_zero() {
            entries.insert(p, (v_id, v_conj));
        }
    }
    Ok(ValuationProfile { entries })
}

/// Logarithmic Weil height of alpha in Q(i):
/// `h = (1/2) [ sum_p sum_sigma log+ |sigma(alpha)|_p + 2 log+ |alpha| ]`.
pub fn gaussian_weil_height(alpha: &GaussianRational) -> Result<HeightValue> {
    if alpha.is_zero() {
        return HeightValue::new(0.0);
    }
    let profile = gaussian_valuations(alpha)?;
    let mut finite = 0.0f64;
    for (&p, &(v_id, v_conj)) in &profile.entries {
        let lp = (p as f64).ln();
        for v in [v_id, v_conj] {
            if v.is_negative() {
                finite += -v.to_f64().unwrap() * lp;
            }
        }
    }
    let arch = 2.0 * alpha.abs().ln().max(0.0);
    HeightValue::new(0.5 * (finite + arch))
}
