//! Independent oracles: every fast path in the crate is re-derived here by
//! brute force — dense quadrature for circle means and boundary integrals,
//! explicit place-by-place sums for heights, direct series summation for
//! tail majorants — and the two must agree.

use std::f64::consts::PI;

use essmin::circle::series::{epsilon_closed, tail_bound};
use essmin::exact::factor::factorize;
use essmin::exact::gaussian::gaussian_weil_height;
use essmin::exact::rational::{valuation, weil_height};
use essmin::{mean_log_plus, parse_rational, phi, psi, series_omega_center, GaussianRational};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

/// Mean of `log⁺|s·e^{iθ} + w|` over the full circle by the trapezoid rule.
/// Periodic, so the rule converges fast away from the kink set; `points` in
/// the millions gives ~1e-11.
fn circle_mean_trapezoid(s: f64, w: Complex64, points: usize) -> f64 {
    let h = 2.0 * PI / points as f64;
    let mut acc = 0.0f64;
    for k in 0..points {
        let theta = k as f64 * h;
        let z = Complex64::from_polar(s, theta) + w;
        acc += log_plus(z.norm());
    }
    acc / points as f64
}

/// For real t in (0, 2), the mean collapses to an integral over the arc
/// where |e^{iθ} + t| > 1, whose endpoint cos θ = −t/2 is known in closed
/// form; the integrand is analytic there, so composite Simpson with 10⁷
/// points is exact to machine precision. This is the reference oracle for
/// the tolerance-monotonicity check.
fn phi_simpson_exact_region(t: f64, points: usize) -> f64 {
    assert!(t > 0.0 && t < 2.0);
    let theta_k = (-t / 2.0).acos();
    let m = points + points % 2; // even panel count
    let h = theta_k / m as f64;
    let f = |theta: f64| 0.5 * (1.0 + t * t + 2.0 * t * theta.cos()).ln();
    let mut acc = f(0.0) + f(theta_k);
    for k in 1..m {
        acc += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    acc * h / 3.0 / PI
}

#[test]
fn phi_matches_a_brute_force_circle_mean() {
    for t in [0.3, 0.5, 1.0, 1.5, 2.5, 7.0] {
        let fast = phi(t, 1e-12).expect("phi").value;
        let oracle = circle_mean_trapezoid(1.0, Complex64::new(t, 0.0), 1_000_000);
        assert!(
            (fast - oracle).abs() < 1e-8,
            "phi({t}) = {fast} vs oracle {oracle}"
        );
    }
}

#[test]
fn psi_matches_a_brute_force_circle_mean_at_complex_shifts() {
    let cases = [
        (Complex64::new(0.0, 1.0), 0.0),
        (Complex64::new(0.3, -0.4), 0.7),
        (Complex64::new(-1.2, 0.9), -0.5),
    ];
    for (c, t) in cases {
        let fast = psi(c, t, 1e-12).expect("psi").value;
        let oracle = circle_mean_trapezoid(1.0, c + t, 2_000_000);
        assert!(
            (fast - oracle).abs() < 1e-8,
            "psi({c}, {t}) = {fast} vs oracle {oracle}"
        );
    }
}

#[test]
fn scaled_circle_mean_matches_the_oracle() {
    let cases = [
        (0.7, Complex64::new(0.9, 0.2)),
        (1.4, Complex64::new(-0.3, -1.1)),
        (0.25, Complex64::new(0.1, 0.05)),
    ];
    for (s, w) in cases {
        let fast = mean_log_plus(s, w, 1e-12).expect("mean").value;
        let oracle = circle_mean_trapezoid(s, w, 2_000_000);
        assert!(
            (fast - oracle).abs() < 1e-8,
            "mean_log_plus({s}, {w}) = {fast} vs oracle {oracle}"
        );
    }
}

/// Composite Simpson for `∫_c^π (e^{iθ} − e^{it})ⁿ dθ`.
fn epsilon_simpson(c: f64, n: usize, t: f64) -> Complex64 {
    let m = 8192;
    let h = (PI - c) / m as f64;
    let f = |theta: f64| {
        (Complex64::from_polar(1.0, theta) - Complex64::from_polar(1.0, t)).powi(n as i32)
    };
    let mut acc = f(c) + f(PI);
    for k in 1..m {
        acc += if k % 2 == 1 { 4.0 } else { 2.0 } * f(c + k as f64 * h);
    }
    acc * (h / 3.0)
}

#[test]
fn epsilon_closed_form_matches_quadrature_on_random_angles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let c: f64 = rng.gen_range(0.05..3.0);
        let t: f64 = rng.gen_range(0.0..2.0 * PI);
        for n in 1..=10 {
            let closed = epsilon_closed(c, n, t).expect("closed form");
            let oracle = epsilon_simpson(c, n, t);
            assert!(
                (closed - oracle).norm() < 1e-9,
                "epsilon({c}, {n}, {t}): closed {closed} vs oracle {oracle}"
            );
        }
    }
}

#[test]
fn tightening_the_tolerance_never_worsens_the_realized_error() {
    for t in [0.6, 1.3] {
        let oracle = phi_simpson_exact_region(t, 10_000_000);
        let mut previous = f64::INFINITY;
        for tol in [1e-4, 1e-6, 1e-8, 1e-10, 1e-12] {
            let evaluated = phi(t, tol).expect("phi");
            let realized = (evaluated.value - oracle).abs();
            assert!(
                realized <= evaluated.abs_error + 1e-12,
                "phi({t}, {tol}): realized error {realized} exceeds the reported {}",
                evaluated.abs_error
            );
            assert!(
                realized <= previous + 2e-12,
                "phi({t}, {tol}): realized error {realized} grew from {previous}"
            );
            previous = realized;
        }
    }
}

#[test]
fn weil_height_equals_the_sum_over_places() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let num = rng.gen_range(1..=100_000i64) * if rng.gen::<bool>() { 1 } else { -1 };
        let den = rng.gen_range(1..=100_000i64);
        let q = BigRational::new(num.into(), den.into());

        let mut primes: Vec<u64> = factorize(q.numer())
            .expect("numerator")
            .into_iter()
            .chain(factorize(q.denom()).expect("denominator"))
            .map(|(p, _)| p)
            .collect();
        primes.sort_unstable();
        primes.dedup();

        // h(q) = Σ_p log⁺|q|_p + log⁺|q|_∞ with |q|_p = p^{−v_p(q)}.
        let mut place_sum = log_plus(num.abs() as f64 / den as f64);
        for p in primes {
            let v = valuation(&q, p);
            if v < 0 {
                place_sum += (-v) as f64 * (p as f64).ln();
            }
        }

        let direct = weil_height(&q).expect("height").value();
        assert!(
            (direct - place_sum).abs() < 1e-10,
            "height of {q}: {direct} vs place sum {place_sum}"
        );
    }
}

#[test]
fn gaussian_heights_match_mahler_measures_of_minimal_polynomials() {
    // (1 + i)/2 has minimal polynomial 2x² − 2x + 1 with both roots inside
    // the unit circle: Mahler measure 2, height (log 2)/2.
    let half = parse_rational("1/2").unwrap();
    let alpha = GaussianRational::new(half.clone(), half);
    let h = gaussian_weil_height(&alpha).expect("height").value();
    assert!((h - 2f64.ln() / 2.0).abs() < 1e-12, "height of (1+i)/2 is {h}");

    // 1 + i: minimal polynomial x² − 2x + 2, both roots of modulus √2:
    // Mahler measure 2, height (log 2)/2.
    let alpha = GaussianRational::from_integers(1, 1);
    let h = gaussian_weil_height(&alpha).expect("height").value();
    assert!((h - 2f64.ln() / 2.0).abs() < 1e-12, "height of 1+i is {h}");

    // 2 + 3i: minimal polynomial x² − 4x + 13, roots of modulus √13:
    // Mahler measure 13, height (log 13)/2.
    let alpha = GaussianRational::from_integers(2, 3);
    let h = gaussian_weil_height(&alpha).expect("height").value();
    assert!((h - 13f64.ln() / 2.0).abs() < 1e-12, "height of 2+3i is {h}");

    // i is a root of unity: height exactly 0.
    let alpha = GaussianRational::from_integers(0, 1);
    assert_eq!(gaussian_weil_height(&alpha).expect("height").value(), 0.0);
}

#[test]
fn tail_majorant_matches_its_defining_series() {
    // Direct summation of prefactor · Σ_{n > N} qⁿ/n, truncated far past
    // machine precision for the q values used.
    let direct = |q: f64, n: usize, prefactor: f64| -> f64 {
        let mut acc = 0.0;
        for k in (n + 1)..=4000 {
            acc += q.powi(k as i32) / k as f64;
        }
        prefactor * acc
    };
    for q in [0.3, 0.5, 0.88] {
        for n in [3usize, 10, 40] {
            for prefactor in [1.0, 1.7] {
                let fast = tail_bound(q, n, prefactor).expect("tail");
                let oracle = direct(q, n, prefactor);
                assert!(
                    (fast - oracle).abs() < 1e-14 + 1e-12 * oracle,
                    "tail({q}, {n}, {prefactor}) = {fast} vs direct sum {oracle}"
                );
            }
        }
    }
    // Pinned spot value.
    let pinned = tail_bound(0.5, 3, 1.0).expect("tail");
    assert!((pinned - 0.026480513893278636).abs() < 1e-16, "pinned tail {pinned}");
}

#[test]
fn product_formula_holds_on_seeded_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let num = rng.gen_range(1..=1_000_000i64) * if rng.gen::<bool>() { 1 } else { -1 };
        let den = rng.gen_range(1..=1_000_000i64);
        let q = BigRational::new(num.into(), den.into());
        let mut primes: Vec<u64> = factorize(q.numer())
            .expect("numerator")
            .into_iter()
            .chain(factorize(q.denom()).expect("denominator"))
            .map(|(p, _)| p)
            .collect();
        primes.sort_unstable();
        primes.dedup();
        let finite: f64 =
            primes.iter().map(|&p| valuation(&q, p) as f64 * (p as f64).ln()).sum();
        let archimedean = (num.abs() as f64 / den as f64).ln();
        assert!(
            (archimedean - finite).abs() < 1e-10,
            "product formula failed for {q}: {archimedean} vs {finite}"
        );
    }
}

#[test]
fn series_limit_agrees_with_the_symmetric_circle_mean() {
    // At the centered argument the functional's archimedean part is an even
    // sum of two circle means, so the series limit must land within the
    // certified tail of twice one mean.
    for (a, b) in [("1", "1"), ("1", "2"), ("1", "3"), ("2", "3"), ("3", "2")] {
        let a = parse_rational(a).unwrap();
        let b = parse_rational(b).unwrap();
        let s = series_omega_center(&a, &b, 20).expect("series");
        let half_ratio = essmin::exact::gaussian::rational_to_f64(&(&b / &a)) / 2.0;
        let mean = phi(half_ratio, 1e-13).expect("phi");
        let gap = (2.0 * mean.value - s.partial_sum).abs();
        assert!(
            gap <= s.tail_bound + 2.0 * mean.abs_error + 2e-12,
            "({a}, {b}): |2·phi − partial| = {gap} exceeds tail {}",
            s.tail_bound
        );
    }
}
