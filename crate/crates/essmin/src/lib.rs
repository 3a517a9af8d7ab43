//! Certified bounds for the essential minimum of the two-term height family
//! `h_{a,b}(α) = h(α) + h(aα + b)` over ℚ and ℚ(i).
//!
//! The crate computes three related quantities for a parameter pair (a, b):
//!
//! * **Upper bounds** ([`omega_min`], [`upper_bound_gaussian`]): the bound
//!   functional Δ(a,b) + φ(t) + φ(t + b/a) minimized over t. Three regimes
//!   are exact (b = 0, ratio ≥ 4) or certified by a convergent series with
//!   an explicit tail bound (0 < ratio < 4); the rest is adaptive
//!   quadrature.
//! * **Lower bounds** ([`best_lower`], [`best_lower_gaussian`]): closed
//!   forms for separated moduli, a numeric minimum of auxiliary functionals
//!   over critical circles, exact height transfer for b = 0, and a weighted
//!   single-minimizer bound, keeping the best.
//! * **Density thresholds** ([`density_threshold`]): a functional whose
//!   every value marks the start of an interval where the family's heights
//!   are dense, minimized over its free parameter, plus a certified
//!   enclosure in the wide-ratio regime.
//!
//! [`analyze`] bundles all three into a [`BoundReport`] with consistency
//! checking and a JSON-stable wire format (all numeric leaves as decimal
//! strings); [`reproduce`] re-derives the named reference tables used by the
//! acceptance suite.
//!
//! Exact data stays exact as long as possible: rationals are `BigRational`,
//! finite places are handled by factorization and valuations, and floats
//! enter only at the final log/mean evaluations, each with an explicit
//! error budget carried in [`ValueWithError`].

pub mod circle;
pub mod density;
mod error;
pub mod exact;
pub mod lower;
pub mod report;
pub mod search;
pub mod upper;
mod value;
pub mod wire;

pub use error::{Error, Result};
pub use value::{HeightValue, ValueWithError};

pub use circle::{mean_log_plus, phi, psi, series_omega_center, series_omega_center_auto, SeriesEvaluation};
pub use density::{density_threshold, gamma, gamma_with_variant, interval_thm43, DensityResult, GammaVariant};
pub use exact::gaussian::{parse_gaussian, GaussianRational};
pub use exact::rational::parse_rational;
pub use exact::{delta, delta_gaussian};
pub use lower::{
    best_lower, best_lower_gaussian, closed_form_lower, closed_form_lower_gaussian,
    find_height_zero_minimizers, find_height_zero_minimizers_gaussian, l_numeric,
    l_numeric_gaussian, tau_b0, tau_profile, tau_single_factor, FactorPoly, LowerBoundResult,
    LowerMethod, MinimizerOutcome, MinimizerSet, TauProfilePoint, TauResult,
};
pub use report::{
    analyze, analyze_gaussian, analyze_opts, reproduce, BoundReport, Config, Field,
    ProblemEcho, ReproductionRow, REPRODUCE_TABLES,
};
pub use upper::{
    normalize_problem, omega, omega_min, upper_bound_gaussian, UpperBoundResult, UpperMethod,
};
