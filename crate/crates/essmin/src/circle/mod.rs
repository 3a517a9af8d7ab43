//! Circle means of `log+`: the even function φ, its complex-shift
//! generalization ψ, and the centered series with certified tails.

pub mod quad;
pub mod series;

use num_complex::Complex64;

use crate::value::ValueWithError;
use crate::Result;

pub use quad::mean_log_plus;
pub use series::{
    alpha_angle, epsilon_closed, series_omega_center, series_omega_center_auto, tail_bound,
    SeriesEvaluation,
};

/// `φ(t) = (1/2π) ∫₀^{2π} log+ |e^{iθ} + t| dθ`.
///
/// Even in t, zero at t = 0, and equal to log |t| for |t| ≥ 2 (where the
/// shifted circle lies outside the unit disc and the mean value property of
/// the logarithm applies exactly).
pub fn phi(t: f64, tol: f64) -> Result<ValueWithError> {
    mean_log_plus(1.0, Complex64::new(t, 0.0), tol)
}

/// `ψ(c, t) = (1/2π) ∫₀^{2π} log+ |e^{iθ} + c + t| dθ` for complex c and
/// real t; reduces to `φ(t)` at c = 0.
pub fn psi(c: Complex64, t: f64, tol: f64) -> Result<ValueWithError> {
    mean_log_plus(1.0, c + t, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_zero_and_even() {
        let v = phi(0.0, 1e-12).unwrap();
        assert_eq!(v.value, 0.0);
        for &t in &[0.3, 0.9, 1.5, 2.7] {
            let plus = phi(t, 1e-12).unwrap();
            let minus = phi(-t, 1e-12).unwrap();
            assert_eq!(plus.value, minus.value, "φ must be even at t = {t}");
        }
    }

    #[test]
    fn phi_log_abs_beyond_two() {
        for &t in &[2.0, 3.0, 4.5, 10.0] {
            let v = phi(t, 1e-12).unwrap();
            assert_eq!(v.value, t.ln());
        }
    }

    #[test]
    fn phi_half_matches_reference_band() {
        // half the certified unit-ratio partial sum, within half its tail
        let v = phi(0.5, 1e-12).unwrap();
        assert!((v.value - 0.15971725558).abs() < 7.3e-6, "got {}", v.value);
    }

    #[test]
    fn psi_reduces_to_phi() {
        for &t in &[0.4, 1.1, 2.5] {
            let a = psi(Complex64::new(0.0, 0.0), t, 1e-12).unwrap();
            let b = phi(t, 1e-12).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn psi_conjugate_shift_symmetry() {
        for &(re, im, t) in &[(0.5, 0.8, 0.3), (1.2, 0.4, -0.7), (0.0, 1.0, 0.0)] {
            let c = Complex64::new(re, im);
            let a = psi(c, t, 1e-12).unwrap();
            let b = psi(c.conj(), t, 1e-12).unwrap();
            assert_eq!(a.value, b.value, "ψ must be conjugation-invariant");
        }
    }
}
