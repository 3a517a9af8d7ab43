//! Lower bounds for the essential minimum of h_{a,b}.
//!
//! Four independent mechanisms produce certified-or-numeric lower bounds and
//! `best_lower` keeps the largest:
//!
//! * closed forms for three separated-modulus regimes of (|a|, |b|);
//! * a numeric minimum of three auxiliary functionals over their critical
//!   circles (`l_numeric`) — valid for any parameters, often weak;
//! * for b = 0, the exact height of a carried over verbatim (`tau_b0`);
//! * when the family has a single height-zero point r0, a weighted bound
//!   that trades the distance to r0 against the functional values
//!   (`tau_single_factor`), maximized over the admissible weight.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::factor::factorize;
use crate::exact::gaussian::{rational_to_f64, GaussianRational};
use crate::exact::rational::{valuation, weil_height};
use crate::search::{min_on_circle, scan_then_golden};
use crate::upper::normalize_problem;
use crate::{Error, Result};

/// How a lower bound was produced. The serialized tokens are part of the
/// wire format and stay fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LowerMethod {
    /// Closed form for |b| > |a| + 1.
    #[serde(rename = "prop34")]
    Prop34,
    /// Closed form for |a| > |b| + 1, b ≠ 0.
    #[serde(rename = "prop35")]
    Prop35,
    /// Closed form for ||a| − |b|| ≤ 1 with |a| + |b| < 1.
    #[serde(rename = "prop36")]
    Prop36,
    /// Numeric minimum of the auxiliary functionals on critical circles.
    #[serde(rename = "L_numeric")]
    LNumeric,
    /// b = 0: the height of a transfers exactly.
    #[serde(rename = "tau_b0")]
    TauB0,
    /// Weighted single-minimizer bound.
    #[serde(rename = "tau_single_factor")]
    TauSingleFactor,
    /// No positive bound available (the trivial bound h ≥ 0).
    #[serde(rename = "zero")]
    Zero,
}

/// A lower bound, how it was obtained, and an optional human-readable
/// witness (winning functional, minimizer polynomial, optimal weight, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundResult {
    #[serde(with = "crate::wire::f64_string")]
    pub value: f64,
    pub method: LowerMethod,
    pub witness: Option<String>,
}

impl LowerBoundResult {
    fn zero(witness: Option<String>) -> Self {
        LowerBoundResult { value: 0.0, method: LowerMethod::Zero, witness }
    }
}

/// A monic polynomial with rational coefficients, stored constant-first.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPoly {
    coeffs: Vec<BigRational>,
}

impl FactorPoly {
    /// x − root.
    pub fn linear(root: &BigRational) -> Self {
        FactorPoly { coeffs: vec![-root.clone(), BigRational::one()] }
    }

    /// Π (x − rᵢ). Errors on an empty root list (no degree-0 monic product
    /// is useful here).
    pub fn from_roots(roots: &[BigRational]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Argument("at least one root is required".into()));
        }
        let mut coeffs = vec![BigRational::one()];
        for r in roots {
            // multiply the constant-first coefficients by (x − r)
            let mut next = vec![BigRational::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Ok(FactorPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The root when this is monic of degree 1.
    pub fn root_if_linear(&self) -> Option<BigRational> {
        if self.degree() == 1 && self.coeffs[1].is_one() {
            Some(-self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Horner evaluation in f64 complex arithmetic.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(rational_to_f64(c), 0.0);
        }
        acc
    }
}

impl fmt::Display for FactorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if !wrote {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The points of smallest possible height hit by both coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerSet {
    /// Rational α with h(α) = 0 and h(aα + b) = 0, in discovery order.
    pub points: Vec<BigRational>,
    /// Monic product of (x − α) over the points.
    pub polynomial: FactorPoly,
}

/// All rational α with h(α) + h(aα + b) = 0.
#[derive(Debug, Clone, PartialEq)]
pub enum MinimizerOutcome {
    /// a = ±1, b = 0: every root of unity works, the family bottoms out at 0.
    Infinite,
    /// No rational point makes both heights vanish.
    Empty,
    /// A finite, non-empty list.
    Set(MinimizerSet),
}

/// Enumerate rational α with h(α) = 0 and h(aα + b) = 0.
///
/// Height-zero rationals are exactly {0, ±1}, so both membership tests are
/// exact. The a = ±1, b = 0 family vanishes on every root of unity and is
/// flagged `Infinite`.
pub fn find_height_zero_minimizers(
    a: &BigRational,
    b: &BigRational,
) -> Result<MinimizerOutcome> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    if a.abs().is_one() && b.is_zero() {
        return Ok(MinimizerOutcome::Infinite);
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut points = Vec::new();
    for alpha in [zero.clone(), one.clone(), -one.clone()] {
        let image = a * &alpha + b;
        if image.is_zero() || image.abs().is_one() {
            points.push(alpha);
        }
    }
    if points.is_empty() {
        return Ok(MinimizerOutcome::Empty);
    }
    let polynomial = FactorPoly::from_roots(&points)?;
    Ok(MinimizerOutcome::Set(MinimizerSet { points, polynomial }))
}

/// Gaussian analogue: height-zero elements of ℚ(i) are {0, ±1, ±i}.
/// Only the point list is reported; the weighted bound is not attempted
/// over ℚ(i).
pub fn find_height_zero_minimizers_gaussian(
    a: &GaussianRational,
    b: &GaussianRational,
) -> Result<Vec<GaussianRational>> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    let mut out = Vec::new();
    for alpha in height_zero_gaussians() {
        let image = a.mul(&alpha).add(b);
        if is_height_zero_gaussian(&image) {
            out.push(alpha);
        }
    }
    Ok(out)
}

fn height_zero_gaussians() -> Vec<GaussianRational> {
    let z = BigRational::zero();
    let o = BigRational::one();
    vec![
        GaussianRational::new(z.clone(), z.clone()),
        GaussianRational::new(o.clone(), z.clone()),
        GaussianRational::new(-o.clone(), z.clone()),
        GaussianRational::new(z.clone(), o.clone()),
        GaussianRational::new(z, -o),
    ]
}

fn is_height_zero_gaussian(g: &GaussianRational) -> bool {
    g.is_zero() || (g.norm().is_one() && (g.re().is_zero() || g.im().is_zero()))
}

/// Closed-form lower bounds for separated moduli, exact hypothesis checks.
/// Inputs must be normalized (a > 0, b ≥ 0). Returns `None` when no regime
/// applies.
pub fn closed_form_lower(
    a: &BigRational,
    b: &BigRational,
) -> Result<Option<LowerBoundResult>> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::Domain(
            "closed-form lower bounds expect a normalized problem: a > 0, b >= 0".into(),
        ));
    }
    let one = BigRational::one();
    let af = rational_to_f64(a);
    let bf = rational_to_f64(b);
    if b - a > one {
        let v1 = (bf - af).ln();
        let v2 = ((bf - 1.0) / af).ln();
        return Ok(Some(LowerBoundResult {
            value: v1.min(v2),
            method: LowerMethod::Prop34,
            witness: None,
        }));
    }
    if a - b > one && !b.is_zero() {
        return Ok(Some(LowerBoundResult {
            value: (af / (bf + 1.0)).ln(),
            method: LowerMethod::Prop35,
            witness: None,
        }));
    }
    if (a - b).abs() <= one && a + b < one {
        return Ok(Some(LowerBoundResult {
            value: -(af + bf).ln(),
            method: LowerMethod::Prop36,
            witness: None,
        }));
    }
    Ok(None)
}

/// Same regimes for Gaussian parameters. Moduli are f64, hypothesis checks
/// are strict f64 comparisons, and the value carries the 1/[K:ℚ] = 1/2
/// normalization of heights over ℚ(i).
pub fn closed_form_lower_gaussian(
    a: &GaussianRational,
    b: &GaussianRational,
) -> Result<Option<LowerBoundResult>> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    let av = a.abs();
    let bv = b.abs();
    if bv - av > 1.0 {
        let v = (bv - av).ln().min(((bv - 1.0) / av).ln());
        return Ok(Some(LowerBoundResult {
            value: 0.5 * v,
            method: LowerMethod::Prop34,
            witness: None,
        }));
    }
    if av - bv > 1.0 && !b.is_zero() {
        return Ok(Some(LowerBoundResult {
            value: 0.5 * (av / (bv + 1.0)).ln(),
            method: LowerMethod::Prop35,
            witness: None,
        }));
    }
    if (av - bv).abs() <= 1.0 && av + bv < 1.0 {
        return Ok(Some(LowerBoundResult {
            value: 0.5 * -(av + bv).ln(),
            method: LowerMethod::Prop36,
            witness: None,
        }));
    }
    Ok(None)
}

fn log_plus(m: f64) -> f64 {
    if m > 1.0 {
        m.ln()
    } else {
        0.0
    }
}

const POLE_GUARD: f64 = 1e-12;
const POLE_VALUE: f64 = 1e12;

/// Minima of the three auxiliary functionals for one embedding (ca, cb):
///
/// * g(z) = log⁺|z| + log⁺|ca·z + cb|
/// * f(z) = log⁺|z| + log⁺|1/(ca·z + cb)|
/// * G(z) = log⁺|z| + log⁺|(ca + cb·z)/z|
///
/// Each functional is minimized over the circles where one of its two terms
/// vanishes: |z| = 1 for all three, |ca·z + cb| = 1 for g and f, and
/// |ca + cb·z| = |z| for G. On those circles the survivor reduces to a
/// single log⁺ of an explicit modulus, minimized by grid + local search.
fn functional_minima(ca: Complex64, cb: Complex64, grid: usize) -> (f64, f64, f64) {
    let unit = |th: f64| Complex64::from_polar(1.0, th);
    let g_on_unit = min_on_circle(|th| log_plus((ca * unit(th) + cb).norm()), grid).1;
    let shared_on_translate =
        min_on_circle(|th| log_plus(((unit(th) - cb) / ca).norm()), grid).1;
    let f_on_unit = min_on_circle(
        |th| {
            let m = (ca * unit(th) + cb).norm();
            if m < POLE_GUARD {
                POLE_VALUE
            } else {
                log_plus(1.0 / m)
            }
        },
        grid,
    )
    .1;
    let big_on_unit = min_on_circle(|th| log_plus((ca + cb * unit(th)).norm()), grid).1;
    let big_on_image = min_on_circle(
        |th| {
            let d = (unit(th) - cb).norm();
            if d < POLE_GUARD {
                POLE_VALUE
            } else {
                log_plus(ca.norm() / d)
            }
        },
        grid,
    )
    .1;
    (
        g_on_unit.min(shared_on_translate),
        f_on_unit.min(shared_on_translate),
        big_on_unit.min(big_on_image),
    )
}

fn pick_functional(g: f64, f: f64, big: f64) -> (f64, &'static str) {
    let mut best = (g, "g");
    if f > best.0 {
        best = (f, "f");
    }
    if big > best.0 {
        best = (big, "G");
    }
    best
}

/// Numeric lower bound: the best of the three auxiliary functionals'
/// critical-circle minima. Inputs must be normalized (a > 0, b ≥ 0).
pub fn l_numeric(a: &BigRational, b: &BigRational, grid: usize) -> Result<LowerBoundResult> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::Domain(
            "the numeric lower bound expects a normalized problem: a > 0, b >= 0".into(),
        ));
    }
    let ca = Complex64::new(rational_to_f64(a), 0.0);
    let cb = Complex64::new(rational_to_f64(b), 0.0);
    let (g, f, big) = functional_minima(ca, cb, grid);
    let (value, name) = pick_functional(g, f, big);
    Ok(LowerBoundResult {
        value,
        method: LowerMethod::LNumeric,
        witness: Some(format!("functional {name} on its critical circles")),
    })
}

/// Gaussian variant: the per-functional minima are averaged over the two
/// embeddings (identity and conjugation) before taking the best functional.
pub fn l_numeric_gaussian(
    a: &GaussianRational,
    b: &GaussianRational,
    grid: usize,
) -> Result<LowerBoundResult> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    let (g1, f1, big1) = functional_minima(a.to_complex(), b.to_complex(), grid);
    let ac = a.conj();
    let bc = b.conj();
    let (g2, f2, big2) = functional_minima(ac.to_complex(), bc.to_complex(), grid);
    let (value, name) =
        pick_functional(0.5 * (g1 + g2), 0.5 * (f1 + f2), 0.5 * (big1 + big2));
    Ok(LowerBoundResult {
        value,
        method: LowerMethod::LNumeric,
        witness: Some(format!("functional {name} averaged over both embeddings")),
    })
}

/// b = 0: h_{a,0}(α) = h(α) + h(aα) ≥ h(a) for every algebraic α ≠ 0, with
/// equality on height-zero points, so h(a) is the exact essential minimum.
/// The finite places contribute in full, hence the exact-rational height.
pub fn tau_b0(a: &BigRational) -> Result<LowerBoundResult> {
    if a.is_zero() {
        return Err(Error::Argument("the parameter a must be nonzero".into()));
    }
    if a.abs().is_one() {
        return Ok(LowerBoundResult::zero(Some(
            "a = ±1 with b = 0: the family vanishes on all roots of unity".into(),
        )));
    }
    let h = weil_height(&a.abs())?;
    Ok(LowerBoundResult {
        value: h.value(),
        method: LowerMethod::TauB0,
        witness: Some("f1 = x".into()),
    })
}

/// One evaluation of the weighted functional: value of
/// min over the two critical circles of (functional − a1·log-distance to r0),
/// with the circle and angle attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauProfilePoint {
    pub value: f64,
    /// Angle attaining the minimum on the winning circle.
    pub theta: f64,
    /// False: the unit circle |z| = 1. True: the translate |a·z + b| = 1.
    pub on_translate_circle: bool,
}

/// Result of the weighted single-minimizer bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TauResult {
    /// The lower bound (may be ≤ 0, in which case it is uninformative).
    pub value: f64,
    /// Weight attaining it.
    pub a1_star: f64,
    /// Largest admissible weight and whether that endpoint is attainable.
    pub a1_max: f64,
    pub a1_max_closed: bool,
    /// Where the inner minimum sat at the optimal weight.
    pub profile: TauProfilePoint,
}

/// Largest admissible weight for the single-minimizer bound.
///
/// A weight A1 is admissible when, at every place, a point close to r0 in
/// that place's metric cannot make the weighted functional arbitrarily
/// negative. Archimedean feasibility caps the weight at 2 (open endpoint);
/// a finite place tightens it to 1 (closed) exactly when |a|_p < 1 or
/// |b|_p > |a|_p there. Only primes dividing a or b can do so.
fn weight_cap(a: &BigRational, b: &BigRational) -> Result<(f64, bool)> {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for int in [a.numer(), a.denom()] {
        for (p, _) in factorize(int)? {
            primes.insert(p);
        }
    }
    if !b.is_zero() {
        for int in [b.numer(), b.denom()] {
            for (p, _) in factorize(int)? {
                primes.insert(p);
            }
        }
    }
    for p in primes {
        let va = valuation(a, p);
        // |a|_p < 1 means v_p(a) > 0; |b|_p > |a|_p means v_p(b) < v_p(a),
        // and |0|_p = 0 never exceeds |a|_p.
        let tightened = if b.is_zero() {
            va > 0
        } else {
            va > 0 || valuation(b, p) < va
        };
        if tightened {
            return Ok((1.0, true));
        }
    }
    Ok((2.0, false))
}

/// Inner minimum of the weighted functional at weight `a1` for minimizer
/// root `r0`, over both critical circles. Closed-form stationary angles are
/// tried alongside the grid so the minimum is located to full precision.
pub fn tau_profile(
    a: &BigRational,
    b: &BigRational,
    r0: &BigRational,
    a1: f64,
    grid: usize,
) -> Result<TauProfilePoint> {
    if !a.is_positive() || b.is_negative() {
        return Err(Error::Domain(
            "the weighted bound expects a normalized problem: a > 0, b >= 0".into(),
        ));
    }
    if !(0.0..=2.0).contains(&a1) {
        return Err(Error::Domain(format!("weight must lie in [0, 2], got {a1}")));
    }
    let af = rational_to_f64(a);
    let bf = rational_to_f64(b);
    let r0f = rational_to_f64(r0);
    let beta = bf + af * r0f;

    // circle |z| = 1: log⁺|a e^{iθ} + b| − a1·log|e^{iθ} − r0|
    let on_unit = move |th: f64| {
        let m = (af * af + bf * bf + 2.0 * af * bf * th.cos()).sqrt();
        let d2 = 1.0 + r0f * r0f - 2.0 * r0f * th.cos();
        if d2 < POLE_GUARD * POLE_GUARD {
            return POLE_VALUE;
        }
        log_plus(m) - a1 * 0.5 * d2.ln()
    };
    // circle |a z + b| = 1, z = (e^{iθ} − b)/a:
    // log⁺(|e^{iθ} − b|/a) − a1·log(|e^{iθ} − β|/a), β = b + a·r0
    let on_translate = move |th: f64| {
        let m = (1.0 + bf * bf - 2.0 * bf * th.cos()).sqrt() / af;
        let d2 = 1.0 + beta * beta - 2.0 * beta * th.cos();
        if d2 < POLE_GUARD * POLE_GUARD {
            return POLE_VALUE;
        }
        log_plus(m) - a1 * (0.5 * d2.ln() - af.ln())
    };

    let (mut th1, mut v1) = min_on_circle(on_unit, grid);
    let (mut th2, mut v2) = min_on_circle(on_translate, grid);

    // Stationary angles of the active branches, exact where they exist.
    if (1.0 - a1).abs() > 1e-9 && bf != 0.0 {
        if r0f != 0.0 {
            let c = (a1 * r0f * (af * af + bf * bf) + af * bf * (1.0 + r0f * r0f))
                / (2.0 * af * bf * r0f * (1.0 - a1));
            if c.abs() <= 1.0 {
                let th = c.acos();
                let v = on_unit(th);
                if v < v1 {
                    th1 = th;
                    v1 = v;
                }
            }
        }
        if beta.abs() > 1e-12 {
            let c = (bf * (1.0 + beta * beta) - a1 * beta * (1.0 + bf * bf))
                / (2.0 * bf * beta * (1.0 - a1));
            if c.abs() <= 1.0 {
                let th = c.acos();
                let v = on_translate(th);
                if v < v2 {
                    th2 = th;
                    v2 = v;
                }
            }
        }
    }

    if v1 <= v2 {
        Ok(TauProfilePoint { value: v1, theta: th1, on_translate_circle: false })
    } else {
        Ok(TauProfilePoint { value: v2, theta: th2, on_translate_circle: true })
    }
}

/// Weighted single-minimizer lower bound.
///
/// Requires the minimizer polynomial to be monic of degree 1 with root in
/// {0, ±1}; the weight is then maximized over its admissible range. The
/// returned value may be ≤ 0 when the mechanism has nothing to offer.
pub fn tau_single_factor(
    a: &BigRational,
    b: &BigRational,
    f1: &FactorPoly,
    grid: usize,
) -> Result<TauResult> {
    let r0 = f1.root_if_linear().ok_or_else(|| {
        Error::Unsupported(format!(
            "the weighted bound handles a single monic linear factor, got {f1}"
        ))
    })?;
    if !(r0.is_zero() || r0.abs().is_one()) {
        return Err(Error::Unsupported(format!(
            "the factor root must be a height-zero rational (0 or ±1), got {r0}"
        )));
    }
    let (a1_max, a1_max_closed) = weight_cap(a, b)?;
    let inner_grid = grid.clamp(64, 1024);
    let profile_value = |a1: f64| -> f64 {
        tau_profile(a, b, &r0, a1, inner_grid)
            .map(|p| p.value)
            .unwrap_or(f64::NEG_INFINITY)
    };

    let hi = if a1_max_closed { a1_max } else { a1_max - 1e-9 };
    let (mut a1_star, _) = scan_then_golden(|a1| -profile_value(a1), 0.0, hi, 96, 1e-9);
    let mut best = profile_value(a1_star);
    // The profile is concave; still, re-check both endpoints (a closed cap
    // frequently wins exactly at the endpoint).
    for cand in [0.0, hi] {
        let v = profile_value(cand);
        if v > best {
            best = v;
            a1_star = cand;
        }
    }
    let profile = tau_profile(a, b, &r0, a1_star, inner_grid)?;
    Ok(TauResult { value: profile.value, a1_star, a1_max, a1_max_closed, profile })
}

const TIE_TOLERANCE: f64 = 1e-12;

fn method_priority(m: LowerMethod) -> u8 {
    match m {
        LowerMethod::Prop34 | LowerMethod::Prop35 | LowerMethod::Prop36 => 5,
        LowerMethod::TauB0 => 4,
        LowerMethod::TauSingleFactor => 3,
        LowerMethod::LNumeric => 2,
        LowerMethod::Zero => 1,
    }
}

fn pick_best(candidates: Vec<LowerBoundResult>) -> LowerBoundResult {
    let top = candidates
        .iter()
        .map(|c| c.value)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(top > 0.0) {
        return LowerBoundResult::zero(None);
    }
    candidates
        .into_iter()
        .filter(|c| c.value >= top - TIE_TOLERANCE)
        .max_by_key(|c| method_priority(c.method))
        .expect("a candidate attains the maximum")
}

/// Largest available lower bound over ℚ. Signs are normalized away first;
/// exact and certified mechanisms win ties against numeric ones.
pub fn best_lower(a: &BigRational, b: &BigRational, grid: usize) -> Result<LowerBoundResult> {
    let (a, b) = normalize_problem(a, b)?;
    let minimizers = find_height_zero_minimizers(&a, &b)?;
    if matches!(minimizers, MinimizerOutcome::Infinite) {
        return Ok(LowerBoundResult::zero(Some(
            "the family vanishes on every root of unity; the essential minimum is 0".into(),
        )));
    }
    let mut candidates = Vec::new();
    if let Some(cf) = closed_form_lower(&a, &b)? {
        candidates.push(cf);
    }
    if b.is_zero() {
        candidates.push(tau_b0(&a)?);
    }
    if let MinimizerOutcome::Set(set) = &minimizers {
        if set.points.len() == 1 {
            if let Ok(tau) = tau_single_factor(&a, &b, &set.polynomial, grid) {
                candidates.push(LowerBoundResult {
                    value: tau.value,
                    method: LowerMethod::TauSingleFactor,
                    witness: Some(format!(
                        "f1 = {}, optimal weight {:.9}",
                        set.polynomial, tau.a1_star
                    )),
                });
            }
        }
    }
    candidates.push(l_numeric(&a, &b, grid)?);
    Ok(pick_best(candidates))
}

/// Largest available lower bound over ℚ(i): closed forms and the numeric
/// functional minimum.
pub fn best_lower_gaussian(
    a: &GaussianRational,
    b: &GaussianRational,
    grid: usize,
) -> Result<LowerBoundResult> {
    let mut candidates = Vec::new();
    if let Some(cf) = closed_form_lower_gaussian(a, b)? {
        candidates.push(cf);
    }
    candidates.push(l_numeric_gaussian(a, b, grid)?);
    Ok(pick_best(candidates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    const GRID: usize = 4096;
    const LN_SQRT3: f64 = 0.5493061443340549;

    #[test]
    fn polynomial_display_and_roots() {
        let p = FactorPoly::linear(&rat("-1"));
        assert_eq!(p.to_string(), "x+1");
        assert_eq!(p.root_if_linear().unwrap(), rat("-1"));
        let p = FactorPoly::linear(&rat("1"));
        assert_eq!(p.to_string(), "x-1");
        let p = FactorPoly::linear(&rat("0"));
        assert_eq!(p.to_string(), "x");
        let p = FactorPoly::from_roots(&[rat("0"), rat("-1")]).unwrap();
        assert_eq!(p.to_string(), "x^2+x");
        assert_eq!(p.degree(), 2);
        assert!(p.root_if_linear().is_none());
        // eval: (x^2 + x) at x = 2 is 6
        let v = p.eval(Complex64::new(2.0, 0.0));
        assert!((v.re - 6.0).abs() < 1e-12 && v.im.abs() < 1e-15);
    }

    #[test]
    fn minimizer_enumeration() {
        match find_height_zero_minimizers(&rat("1"), &rat("2")).unwrap() {
            MinimizerOutcome::Set(s) => {
                assert_eq!(s.points, vec![rat("-1")]);
                assert_eq!(s.polynomial.to_string(), "x+1");
            }
            other => panic!("expected a single minimizer, got {other:?}"),
        }
        match find_height_zero_minimizers(&rat("2"), &rat("0")).unwrap() {
            MinimizerOutcome::Set(s) => {
                assert_eq!(s.points, vec![rat("0")]);
                assert_eq!(s.polynomial.to_string(), "x");
            }
            other => panic!("expected a single minimizer, got {other:?}"),
        }
        match find_height_zero_minimizers(&rat("1"), &rat("1")).unwrap() {
            MinimizerOutcome::Set(s) => {
                assert_eq!(s.points, vec![rat("0"), rat("-1")]);
                assert_eq!(s.polynomial.to_string(), "x^2+x");
            }
            other => panic!("expected two minimizers, got {other:?}"),
        }
        assert!(matches!(
            find_height_zero_minimizers(&rat("1"), &rat("3")).unwrap(),
            MinimizerOutcome::Empty
        ));
        assert!(matches!(
            find_height_zero_minimizers(&rat("1"), &rat("0")).unwrap(),
            MinimizerOutcome::Infinite
        ));
        assert!(matches!(
            find_height_zero_minimizers(&rat("-1"), &rat("0")).unwrap(),
            MinimizerOutcome::Infinite
        ));
    }

    #[test]
    fn gaussian_minimizer_enumeration() {
        let g = |s: &str| crate::exact::gaussian::parse_gaussian(s).unwrap();
        // a = 1, b = 1 − i: α = 0 gives 1 − i, height > 0; α = −1 gives −i ✓;
        // α = i gives 1 ✓
        let pts = find_height_zero_minimizers_gaussian(&g("1"), &g("1-i")).unwrap();
        assert_eq!(pts.len(), 2);
        let pts = find_height_zero_minimizers_gaussian(&g("1"), &g("3")).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn closed_forms_on_reference_inputs() {
        let r = closed_form_lower(&rat("1"), &rat("5")).unwrap().unwrap();
        assert_eq!(r.method, LowerMethod::Prop34);
        assert!((r.value - 4.0f64.ln()).abs() < 1e-14);

        let r = closed_form_lower(&rat("5"), &rat("1")).unwrap().unwrap();
        assert_eq!(r.method, LowerMethod::Prop35);
        assert!((r.value - 2.5f64.ln()).abs() < 1e-14);

        let r = closed_form_lower(&rat("1/3"), &rat("1/4")).unwrap().unwrap();
        assert_eq!(r.method, LowerMethod::Prop36);
        assert!((r.value - (12.0f64 / 7.0).ln()).abs() < 1e-14);

        assert!(closed_form_lower(&rat("1"), &rat("1")).unwrap().is_none());
        assert!(closed_form_lower(&rat("1"), &rat("2")).unwrap().is_none());
        // boundary |b| − |a| = 1 is excluded
        assert!(closed_form_lower(&rat("2"), &rat("3")).unwrap().is_none());
    }

    #[test]
    fn numeric_functional_bound() {
        // (1,5):functional g bottoms out at log 4 on the unit circle
        let r = l_numeric(&rat("1"), &rat("5"), GRID).unwrap();
        assert!((r.value - 4.0f64.ln()).abs() < 1e-8, "got {}", r.value);
        // (5,1): the reciprocal-image functional reproduces the closed form
        let r = l_numeric(&rat("5"), &rat("1"), GRID).unwrap();
        assert!((r.value - 2.5f64.ln()).abs() < 1e-8, "got {}", r.value);
        // (1,1): every functional touches 0
        let r = l_numeric(&rat("1"), &rat("1"), GRID).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn exact_height_transfer_for_b_zero() {
        let r = tau_b0(&rat("2")).unwrap();
        assert_eq!(r.method, LowerMethod::TauB0);
        assert!((r.value - 2.0f64.ln()).abs() < 1e-15);
        let r = tau_b0(&rat("7/15")).unwrap();
        assert!((r.value - 15.0f64.ln()).abs() < 1e-12);
        let r = tau_b0(&rat("1")).unwrap();
        assert_eq!(r.method, LowerMethod::Zero);
    }

    #[test]
    fn weight_caps() {
        // (1,2): no prime tightens the cap, archimedean range [0,2)
        let (hi, closed) = weight_cap(&rat("1"), &rat("2")).unwrap();
        assert_eq!(hi, 2.0);
        assert!(!closed);
        // (2,0): p = 2 has |a|_2 < 1, cap [0,1]
        let (hi, closed) = weight_cap(&rat("2"), &rat("0")).unwrap();
        assert_eq!(hi, 1.0);
        assert!(closed);
        // (3,2): |b|_2 > |a|_2 at p = 2 tightens; |a|_3 < 1 at p = 3 too
        let (hi, closed) = weight_cap(&rat("3"), &rat("2")).unwrap();
        assert_eq!(hi, 1.0);
        assert!(closed);
    }

    #[test]
    fn weighted_bound_reference_case() {
        let f1 = FactorPoly::linear(&rat("-1"));
        let tau = tau_single_factor(&rat("1"), &rat("2"), &f1, GRID).unwrap();
        assert!(
            (tau.value - LN_SQRT3).abs() < 1e-9,
            "value {} vs {}",
            tau.value,
            LN_SQRT3
        );
        assert!(
            (tau.a1_star - 2.0 / 3.0).abs() < 1e-6,
            "weight {} vs 2/3",
            tau.a1_star
        );
        assert_eq!(tau.a1_max, 2.0);
        assert!(!tau.a1_max_closed);
        // at the optimal weight the winning angle satisfies its stationarity
        // equation: cos θ = w/(4(1−w)) − 1 on the unit circle and
        // 1 − w/(4(1−w)) on the translate circle
        let w = tau.a1_star;
        let expect = if tau.profile.on_translate_circle {
            1.0 - w / (4.0 * (1.0 - w))
        } else {
            w / (4.0 * (1.0 - w)) - 1.0
        };
        assert!(
            (tau.profile.theta.cos() - expect).abs() < 1e-6,
            "cos {} vs {}",
            tau.profile.theta.cos(),
            expect
        );
    }

    #[test]
    fn weighted_bound_integer_b_zero() {
        let f1 = FactorPoly::linear(&rat("0"));
        let tau = tau_single_factor(&rat("2"), &rat("0"), &f1, GRID).unwrap();
        assert!((tau.value - 2.0f64.ln()).abs() < 1e-9, "got {}", tau.value);
        assert!((tau.a1_star - 1.0).abs() < 1e-6);
        assert!(tau.a1_max_closed);
    }

    #[test]
    fn weighted_bound_rejects_unsupported_factors() {
        let quad = FactorPoly::from_roots(&[rat("0"), rat("-1")]).unwrap();
        assert!(matches!(
            tau_single_factor(&rat("1"), &rat("1"), &quad, GRID),
            Err(Error::Unsupported(_))
        ));
        let far = FactorPoly::linear(&rat("2"));
        assert!(matches!(
            tau_single_factor(&rat("1"), &rat("2"), &far, GRID),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn profile_vanishes_at_zero_weight() {
        let p = tau_profile(&rat("1"), &rat("2"), &rat("-1"), 0.0, 512).unwrap();
        assert!(p.value.abs() < 1e-12, "got {}", p.value);
    }

    #[test]
    fn best_lower_dispatch() {
        let r = best_lower(&rat("1"), &rat("2"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::TauSingleFactor);
        assert!((r.value - LN_SQRT3).abs() < 1e-9);
        assert!(r.witness.as_deref().unwrap().contains("x+1"));

        let r = best_lower(&rat("1"), &rat("5"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::Prop34);
        assert!((r.value - 4.0f64.ln()).abs() < 1e-14);

        let r = best_lower(&rat("1"), &rat("1"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::Zero);
        assert_eq!(r.value, 0.0);

        let r = best_lower(&rat("2"), &rat("0"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::TauB0);
        assert!((r.value - 2.0f64.ln()).abs() < 1e-15);

        let r = best_lower(&rat("7/15"), &rat("0"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::TauB0);
        assert!((r.value - 15.0f64.ln()).abs() < 1e-12);

        let r = best_lower(&rat("-1"), &rat("0"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::Zero);

        // sign normalization: (1,-2) matches (1,2)
        let r2 = best_lower(&rat("1"), &rat("-2"), GRID).unwrap();
        let r1 = best_lower(&rat("1"), &rat("2"), GRID).unwrap();
        assert_eq!(r1.value, r2.value);
    }

    #[test]
    fn best_lower_gaussian_dispatch() {
        let g = |s: &str| crate::exact::gaussian::parse_gaussian(s).unwrap();
        // |b| − |a| = 4: the numeric functional beats the halved closed form
        let r = best_lower_gaussian(&g("i"), &g("3+4i"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::LNumeric);
        assert!((r.value - 4.0f64.ln()).abs() < 1e-8, "got {}", r.value);
        // (i, 2i): no mechanism clears zero
        let r = best_lower_gaussian(&g("i"), &g("2i"), GRID).unwrap();
        assert_eq!(r.method, LowerMethod::Zero);
        assert_eq!(r.value, 0.0);
    }
}
