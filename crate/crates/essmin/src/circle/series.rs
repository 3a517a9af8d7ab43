//! Power-series evaluation of the circle functional at its symmetric center,
//! with a certified geometric tail bound.
//!
//! For positive rational a, b with 0 < b/a < 4 the two shifted circles
//! involved in the upper-bound functional intersect; writing
//! α = arccos(b/4a) for the argument of the first-quadrant intersection and
//! ψ = (π + α)/2, the archimedean part at the center t = −b/2a expands as
//!
//! ```text
//! T = (2/π) Re( log(b/2a − e^{iψ})(π − α)
//!               − Σ_{n≥1} (2a)ⁿ / (n (b − 2a e^{iψ})ⁿ) · ε_α(n, ψ) )
//! ```
//!
//! where `ε_c(n, t) = ∫_c^π (e^{iθ} − e^{it})ⁿ dθ` has an elementary closed
//! form and obeys a numerically stable first-order recurrence. The terms
//! decay geometrically with ratio `q = |1 + e^{iψ}| / |b/2a − e^{iψ}| < 1`,
//! so the tail dropped after N terms is certified by bounding the next few
//! dropped terms by their actual moduli and everything beyond by the
//! geometric majorant `(2(π−α)/π)·(−log(1−q) − Σ_{n≤M} qⁿ/n)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::exact::gaussian::rational_to_f64;
use crate::{Error, Result};

/// Truncated series value with everything needed to certify it.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    /// Partial sum T_N of the archimedean part at the center.
    pub partial_sum: f64,
    /// Certified bound on the absolute value of the dropped tail.
    pub tail_bound: f64,
    /// Geometric ratio q of the tail majorant; always < 1 on the valid domain.
    pub ratio: f64,
    /// Number of series terms N included in the partial sum.
    pub terms: usize,
    /// Intersection angle α = arccos(b/4a) in radians.
    pub alpha: f64,
}

impl SeriesEvaluation {
    /// Certified upper bound for the archimedean part: partial sum plus tail.
    pub fn certified_upper(&self) -> f64 {
        self.partial_sum + self.tail_bound
    }
}

/// Exact binomial coefficients C(n, k) for n ≤ 128 via Pascal's triangle in
/// u128 (C(128, 64) ≈ 2.4e37 still fits); rows are cached.
fn binomial_row(n: usize) -> Vec<f64> {
    const MAX_EXACT: usize = 128;
    static ROWS: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    let rows = ROWS.get_or_init(|| {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(MAX_EXACT + 1);
        rows.push(vec![1u128]);
        for n in 1..=MAX_EXACT {
            let prev = &rows[n - 1];
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        rows
    });
    if n <= MAX_EXACT {
        rows[n].iter().map(|&c| c as f64).collect()
    } else {
        // multiplicative fallback; relative error stays near machine epsilon
        let mut row = vec![1.0f64; n + 1];
        for k in 1..=n / 2 {
            row[k] = row[k - 1] * (n - k + 1) as f64 / k as f64;
            row[n - k] = row[k];
        }
        row
    }
}

#[derive(Default, Clone, Copy)]
struct KahanComplex {
    sum: Complex64,
    comp: Complex64,
}

impl KahanComplex {
    fn add(&mut self, term: Complex64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

#[derive(Default, Clone, Copy)]
struct KahanReal {
    sum: f64,
    comp: f64,
}

impl KahanReal {
    fn add(&mut self, term: f64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Intersection angle α = arccos(b/(4a)) of the unit circle and the unit
/// circle centered at b/2a, taken in the first quadrant.
///
/// Requires a, b > 0 with 0 < b/a < 4. Equals arctan(√(16a² − b²)/b) on that
/// range.
pub fn alpha_angle(a: &BigRational, b: &BigRational) -> Result<f64> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain(format!(
            "alpha_angle requires positive a and b, got a={a}, b={b}"
        )));
    }
    let ratio = b / a;
    if ratio >= BigRational::from_integer(4.into()) {
        return Err(Error::Domain(format!(
            "alpha_angle requires b/a < 4, got b/a = {ratio}"
        )));
    }
    let cos_alpha = rational_to_f64(&(&ratio / BigRational::from_integer(4.into())));
    Ok(cos_alpha.acos())
}

/// Closed form of `ε_c(n, t) = ∫_c^π (e^{iθ} − e^{it})ⁿ dθ`:
///
/// ```text
/// ε_c(n, t) = (−1)ⁿ (π − c) e^{itn}
///           + Σ_{k=0}^{n−1} C(n,k) (−1)^k ((−1)^{n−k} − e^{ic(n−k)}) e^{itk} / (i(n−k))
/// ```
///
/// The phase `e^{iπ(n−k)}` is the exact sign `(−1)^{n−k}`, binomials are
/// exact integers up to n = 128, and the k-sum is compensated, so the closed
/// form stays accurate to ~1e−14 for the term counts used here.
pub fn epsilon_closed(c: f64, n: usize, t: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Argument("epsilon_closed requires n >= 1".into()));
    }
    if !c.is_finite() || !t.is_finite() {
        return Err(Error::Argument("epsilon_closed requires finite angles".into()));
    }
    if !(0.0..=PI).contains(&c) {
        return Err(Error::Domain(format!(
            "epsilon_closed requires 0 <= c <= pi, got c = {c}"
        )));
    }
    if c == PI {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let binom = binomial_row(n);
    let mut re = KahanReal::default();
    let mut im = KahanReal::default();
    let lead = Complex64::from_polar(PI - c, t * n as f64)
        * if n % 2 == 0 { 1.0 } else { -1.0 };
    re.add(lead.re);
    im.add(lead.im);
    for k in 0..n {
        let m = (n - k) as f64; // n − k ≥ 1
        let sign_nk = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
        let bracket = Complex64::new(sign_nk, 0.0) - Complex64::from_polar(1.0, c * m);
        let phase = Complex64::from_polar(1.0, t * k as f64);
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        // 1/(i m) = −i/m
        let term = bracket * phase * Complex64::new(0.0, -sign_k * binom[k] / m);
        re.add(term.re);
        im.add(term.im);
    }
    Ok(Complex64::new(re.sum, im.sum))
}

/// First `upto` values of `ε_α(n, ψ)` (index n, entry 0 is the arc length)
/// via the recurrence obtained by integrating d/dθ (e^{iθ} − e^{iψ})ⁿ:
///
/// ```text
/// ε_n = (Bⁿ(π) − Bⁿ(α)) / (i n) − e^{iψ} ε_{n−1},   B(θ) = e^{iθ} − e^{iψ}
/// ```
///
/// The coefficient multiplying ε_{n−1} has modulus 1, so rounding errors do
/// not amplify; unlike the closed form, whose binomial terms of size ~2ⁿ
/// cancel to a result of size ~|B(π)|ⁿ and lose all precision past n ≈ 50,
/// the recurrence stays accurate to machine precision relative to the terms
/// it feeds into the series for every n used here.
fn epsilon_sequence(alpha: f64, psi: f64, upto: usize) -> Vec<Complex64> {
    let e_psi = Complex64::from_polar(1.0, psi);
    let b_pi = Complex64::new(-1.0, 0.0) - e_psi;
    let b_alpha = Complex64::from_polar(1.0, alpha) - e_psi;
    let mut eps = Vec::with_capacity(upto + 1);
    eps.push(Complex64::new(PI - alpha, 0.0));
    let mut pow_pi = Complex64::new(1.0, 0.0);
    let mut pow_alpha = Complex64::new(1.0, 0.0);
    for n in 1..=upto {
        pow_pi *= b_pi;
        pow_alpha *= b_alpha;
        let boundary = (pow_pi - pow_alpha) / Complex64::new(0.0, n as f64);
        let prev = *eps.last().expect("seeded with eps_0");
        eps.push(boundary - e_psi * prev);
    }
    eps
}

/// Remainder of the logarithm series beyond N terms, scaled by `prefactor`:
/// `prefactor · (−log(1−q) − Σ_{n=1}^{N} qⁿ/n)`, which majorizes every tail
/// the series evaluation drops. Requires 0 < q < 1.
pub fn tail_bound(q: f64, n: usize, prefactor: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!(
            "tail_bound requires 0 < q < 1, got q = {q}"
        )));
    }
    if !(prefactor > 0.0) {
        return Err(Error::Domain(format!(
            "tail_bound requires a positive prefactor, got {prefactor}"
        )));
    }
    let mut partial = KahanReal::default();
    let mut pow = 1.0f64;
    for k in 1..=n {
        pow *= q;
        partial.add(pow / k as f64);
    }
    let full = -(-q).ln_1p(); // −log(1 − q)
    Ok((prefactor * (full - partial.sum)).max(0.0))
}

/// How many dropped terms past N are bounded by their actual moduli before
/// the geometric majorant takes over. The majorant overstates oscillatory
/// cancellation by orders of magnitude at small N; inspecting this many real
/// terms recovers a tail close to the truth at negligible cost.
const TAIL_LOOKAHEAD: usize = 32;

/// Evaluate the centered series for positive rational a, b with 0 < b/a < 4,
/// keeping N terms. The result certifies the archimedean part of the
/// upper-bound functional at t = −b/2a as `partial_sum ± tail_bound`.
pub fn series_omega_center(
    a: &BigRational,
    b: &BigRational,
    n: usize,
) -> Result<SeriesEvaluation> {
    if n == 0 {
        return Err(Error::Argument("series_omega_center requires N >= 1".into()));
    }
    let alpha = alpha_angle(a, b)?; // validates positivity and b/a < 4
    let psi = 0.5 * (PI + alpha);
    let e_psi = Complex64::from_polar(1.0, psi);
    let half_ratio =
        rational_to_f64(&(b / (a * BigRational::from_integer(2.into())))); // b/2a
    let w = Complex64::new(half_ratio, 0.0) - e_psi;
    // ψ ∈ (π/2, π) keeps Im w = −sin ψ < 0, so the principal log below never
    // crosses the branch cut while the series converges to it.
    if w.im >= 0.0 {
        return Err(Error::Internal(format!(
            "series center w = {w} should have negative imaginary part"
        )));
    }
    let q = (Complex64::new(1.0, 0.0) + e_psi).norm() / w.norm();
    if !(q < 1.0) {
        return Err(Error::Internal(format!(
            "series ratio q = {q} must be < 1 on the valid domain"
        )));
    }
    let horizon = n + TAIL_LOOKAHEAD;
    let eps = epsilon_sequence(alpha, psi, horizon);
    let inv_w = w.inv(); // (2a)/(b − 2a e^{iψ}) = 1/w
    let mut sum = KahanComplex::default();
    let mut pw = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        pw *= inv_w;
        sum.add(pw * eps[k] / k as f64);
    }
    let lead = w.ln() * (PI - alpha);
    let partial_sum = (2.0 / PI) * (lead - sum.sum).re;

    // Tail: the next TAIL_LOOKAHEAD dropped terms bounded by their moduli,
    // the rest by the geometric majorant. Both pieces majorize what they
    // cover, and each modulus is below its majorant increment, so the bound
    // is monotone non-increasing in N.
    let mut dropped = KahanReal::default();
    for k in (n + 1)..=horizon {
        pw *= inv_w;
        dropped.add((2.0 / PI) * (pw * eps[k] / k as f64).norm());
    }
    let prefactor = 2.0 * (PI - alpha) / PI;
    let tail = dropped.sum + tail_bound(q, horizon, prefactor)?;
    Ok(SeriesEvaluation {
        partial_sum,
        tail_bound: tail,
        ratio: q,
        terms: n,
        alpha,
    })
}

/// Smallest N whose tail bound drops below `target`, capped at `cap`.
/// The partial sum is then evaluated at that N.
pub fn series_omega_center_auto(
    a: &BigRational,
    b: &BigRational,
    target: f64,
    cap: usize,
) -> Result<SeriesEvaluation> {
    // one cheap evaluation at N = 1 fixes q and the prefactor
    let probe = series_omega_center(a, b, 1)?;
    let prefactor = 2.0 * (PI - probe.alpha) / PI;
    let mut n = 1;
    while n < cap && tail_bound(probe.ratio, n, prefactor)? > target {
        n += 1;
    }
    if n == 1 {
        return Ok(probe);
    }
    series_omega_center(a, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::parse_rational;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn alpha_angle_pinned_values() {
        // cos α = 1/2 → α = π/3
        let a = alpha_angle(&rat("1"), &rat("2")).unwrap();
        assert!((a - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        // cos α = 1/4; also equals arctan(√15)
        let a = alpha_angle(&rat("1"), &rat("1")).unwrap();
        assert!((a - 1.318116071652818).abs() < 1e-15);
        assert!((a - 15.0f64.sqrt().atan()).abs() < 1e-14);
        // near-degenerate case b/a → 4
        let a = alpha_angle(&rat("1"), &rat("399/100")).unwrap();
        assert!((a - (399.0f64 / 400.0).acos()).abs() < 1e-15);
        assert!(a < 0.08);
    }

    #[test]
    fn alpha_angle_rejects_out_of_range() {
        assert!(alpha_angle(&rat("1"), &rat("4")).is_err());
        assert!(alpha_angle(&rat("1"), &rat("0")).is_err());
        assert!(alpha_angle(&rat("-1"), &rat("1")).is_err());
    }

    #[test]
    fn epsilon_empty_interval_is_zero() {
        for n in 1..6 {
            let v = epsilon_closed(PI, n, 0.7).unwrap();
            assert_eq!(v, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn epsilon_elementary_case() {
        // ∫₀^π (e^{iθ} − 1) dθ = 2i − π
        let v = epsilon_closed(0.0, 1, 0.0).unwrap();
        assert!((v.re - (-PI)).abs() < 1e-15, "re = {}", v.re);
        assert!((v.im - 2.0).abs() < 1e-15, "im = {}", v.im);
    }

    #[test]
    fn epsilon_rejects_bad_input() {
        assert!(epsilon_closed(0.5, 0, 0.0).is_err());
        assert!(epsilon_closed(-0.1, 1, 0.0).is_err());
        assert!(epsilon_closed(3.5, 1, 0.0).is_err());
    }

    #[test]
    fn tail_bound_pinned_value() {
        // log 2 − (1/2 + 1/8 + 1/24)
        let v = tail_bound(0.5, 3, 1.0).unwrap();
        assert!((v - 0.026480513893278636).abs() < 1e-16, "got {v}");
    }

    #[test]
    fn tail_bound_vanishes_with_ratio() {
        assert!(tail_bound(1e-9, 4, 1.0).unwrap() < 1e-36);
        assert!(tail_bound(1.0, 3, 1.0).is_err());
        assert!(tail_bound(-0.5, 3, 1.0).is_err());
    }

    #[test]
    fn tail_bound_monotone_in_terms() {
        let mut last = f64::INFINITY;
        for n in 1..40 {
            let v = tail_bound(0.645193, n, 1.17).unwrap();
            assert!(v <= last, "tail must not grow with N");
            last = v;
        }
    }

    #[test]
    fn series_unit_ratio_matches_reference_constants() {
        let s = series_omega_center(&rat("1"), &rat("1"), 20).unwrap();
        assert!(
            (s.partial_sum - 0.3194345111561).abs() < 5e-13,
            "partial sum {}",
            s.partial_sum
        );
        assert!(s.tail_bound <= 0.0000145758, "tail {}", s.tail_bound);
        assert!(s.tail_bound > 0.0, "tail must be positive: {}", s.tail_bound);
        assert!(s.certified_upper() <= 0.3194490869562);
        // the inspected-moduli tail never exceeds the pure geometric majorant
        let crude = tail_bound(s.ratio, 20, 2.0 * (PI - s.alpha) / PI).unwrap();
        assert!(s.tail_bound <= crude, "refined {} vs crude {}", s.tail_bound, crude);
        // q has a closed form for b/a = 1: 2·sqrt(2 − sqrt(3/2)) / sqrt(5 + sqrt 6)
        let q_closed = 2.0 * (2.0 - 1.5f64.sqrt()).sqrt() / (5.0 + 6.0f64.sqrt()).sqrt();
        assert!((s.ratio - q_closed).abs() < 1e-14, "q = {}", s.ratio);
    }

    #[test]
    fn series_other_ratios_stay_below_reference_totals() {
        let s = series_omega_center(&rat("1"), &rat("2"), 15).unwrap();
        assert!(s.certified_upper() <= 0.6461598436469, "got {}", s.certified_upper());
        assert!(s.certified_upper() > 0.64613, "got {}", s.certified_upper());
        let s = series_omega_center(&rat("1"), &rat("3"), 7).unwrap();
        assert!(s.certified_upper() <= 0.9909205628144, "got {}", s.certified_upper());
        assert!(s.certified_upper() > 0.99088, "got {}", s.certified_upper());
    }

    #[test]
    fn recurrence_agrees_with_closed_form_while_both_are_accurate() {
        // the closed form loses precision past n ≈ 40; below that both
        // evaluations of ε must coincide to near machine precision
        for (a, b) in [("1", "1"), ("1", "2"), ("1", "3"), ("2", "3"), ("7", "2")] {
            let alpha = alpha_angle(&rat(a), &rat(b)).unwrap();
            let psi = 0.5 * (PI + alpha);
            let eps = epsilon_sequence(alpha, psi, 25);
            for (n, &e) in eps.iter().enumerate().skip(1) {
                let closed = epsilon_closed(alpha, n, psi).unwrap();
                // the closed form cancels ~2ⁿ-sized binomial terms, so its
                // own rounding error grows like 2ⁿ·ulp
                let tol = 1e-12 + 2.0f64.powi(n as i32) * 4e-16;
                assert!(
                    (closed - e).norm() < tol,
                    "({a},{b}) n={n}: closed {closed} vs recurrence {e}"
                );
            }
        }
    }

    #[test]
    fn tail_is_monotone_in_terms_and_certifies_the_limit() {
        // partial(60) is a near-exact stand-in for the limit
        let reference = series_omega_center(&rat("1"), &rat("3"), 60).unwrap().partial_sum;
        let mut last_tail = f64::INFINITY;
        for n in 1..=30 {
            let s = series_omega_center(&rat("1"), &rat("3"), n).unwrap();
            assert!(s.tail_bound <= last_tail + 1e-15, "tail grew at N={n}");
            assert!(
                (s.partial_sum - reference).abs() <= s.tail_bound + 1e-13,
                "N={n}: |{} - {reference}| > {}",
                s.partial_sum,
                s.tail_bound
            );
            last_tail = s.tail_bound;
        }
    }

    #[test]
    fn series_auto_reaches_target() {
        let s = series_omega_center_auto(&rat("1"), &rat("1"), 1e-12, 200).unwrap();
        assert!(s.tail_bound < 1e-12);
        assert!(s.terms < 200);
        // tighter truncation only sharpens the certified value
        let coarse = series_omega_center(&rat("1"), &rat("1"), 20).unwrap();
        assert!(s.certified_upper() <= coarse.certified_upper() + 1e-15);
    }
}
