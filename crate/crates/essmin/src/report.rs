//! Report assembly: one call produces lower bound, upper bound, and density
//! threshold for a parameter pair, with consistency checking, explanatory
//! notes, and a JSON-stable shape. Reproduction tables re-derive the named
//! reference constants and grade each against its declared tolerance band.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::circle::series::tail_bound;
use crate::circle::series_omega_center;
use crate::density::{density_threshold, DensityResult};
use crate::exact::gaussian::GaussianRational;
use crate::exact::rational::parse_rational;
use crate::lower::{
    best_lower, best_lower_gaussian, tau_single_factor, FactorPoly, LowerBoundResult,
    LowerMethod,
};
use crate::upper::{
    normalize_problem, omega, omega_min, upper_bound_gaussian, UpperBoundResult, UpperMethod,
};
use crate::value::ValueWithError;
use crate::{Error, Result};

/// Tunables shared by every entry point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Target absolute tolerance for circle means and series tails.
    #[serde(with = "crate::wire::f64_string")]
    pub tol: f64,
    /// Grid resolution for minima over circles.
    #[serde(with = "crate::wire::usize_string")]
    pub grid_size: usize,
    /// Hard cap on series length when auto-selecting the truncation.
    #[serde(with = "crate::wire::usize_string")]
    pub series_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { tol: 1e-12, grid_size: 4096, series_cap: 200 }
    }
}

/// Which field the parameters live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
}

/// Canonical echo of the analyzed parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemEcho {
    pub a: String,
    pub b: String,
    pub field: Field,
}

/// The full output for one parameter pair. Field declaration order is the
/// JSON key order and stays fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub problem: ProblemEcho,
    pub lower: LowerBoundResult,
    pub upper: UpperBoundResult,
    pub density: Option<DensityResult>,
    pub config: Config,
    pub notes: Vec<String>,
    pub version: String,
}

impl BoundReport {
    /// Sandwich check: the lower bound must not exceed the upper enclosure.
    /// Exact mechanisms get a strict slack, numeric ones a forgiving one.
    pub fn is_consistent(&self) -> bool {
        self.lower.value <= self.upper.value.upper() + consistency_slack(self.lower.method)
    }
}

fn consistency_slack(method: LowerMethod) -> f64 {
    match method {
        LowerMethod::Prop34
        | LowerMethod::Prop35
        | LowerMethod::Prop36
        | LowerMethod::TauB0
        | LowerMethod::Zero => 1e-12,
        LowerMethod::LNumeric | LowerMethod::TauSingleFactor => 1e-8,
    }
}

fn push_common_notes(notes: &mut Vec<String>, lower: &LowerBoundResult, upper: &UpperBoundResult) {
    if !upper.certified {
        notes.push(
            "the upper bound is a quadrature estimate; its abs_error is a numeric \
             estimate, not a certified enclosure radius"
                .into(),
        );
    }
    if matches!(lower.method, LowerMethod::LNumeric | LowerMethod::TauSingleFactor) {
        notes.push(
            "the lower bound was obtained by numeric minimization over critical \
             circles; the last digits are approximate"
                .into(),
        );
    }
}

fn finish_notes(notes: &mut Vec<String>, lower: &LowerBoundResult, upper: &UpperBoundResult) {
    let slack = consistency_slack(lower.method);
    if lower.value > upper.value.upper() + slack {
        notes.push(format!(
            "INCONSISTENT: lower bound {} exceeds the certified upper bound {}",
            lower.value,
            upper.value.upper()
        ));
    }
}

/// Analyze a rational pair with default settings.
pub fn analyze(a: &BigRational, b: &BigRational) -> Result<BoundReport> {
    analyze_opts(a, b, None, &Config::default())
}

/// Analyze a rational pair. `t_override` pins the upper-bound functional at
/// one argument (for the normalized problem) instead of minimizing, which
/// always yields an uncertified quadrature value.
pub fn analyze_opts(
    a: &BigRational,
    b: &BigRational,
    t_override: Option<f64>,
    config: &Config,
) -> Result<BoundReport> {
    let upper = match t_override {
        None => omega_min(a, b, config.tol, config.series_cap)?,
        Some(t) => {
            if !t.is_finite() {
                return Err(Error::Argument("t must be finite".into()));
            }
            let (na, nb) = normalize_problem(a, b)?;
            let value = omega(&na, &nb, t, config.tol)?;
            UpperBoundResult {
                value,
                t_star: t,
                method: UpperMethod::QuadratureMin,
                certified: false,
            }
        }
    };
    let lower = best_lower(a, b, config.grid_size)?;
    let density = Some(density_threshold(a, b, None, config.tol)?);

    let mut notes = Vec::new();
    push_common_notes(&mut notes, &lower, &upper);
    let (na, nb) = normalize_problem(a, b)?;
    if na == parse_rational("7/15")? && nb == parse_rational("125/18")? {
        notes.push(
            "for (7/15, 125/18) a published worked example tabulates the place-by-place \
             sum with unreduced fractions and a signed archimedean term; evaluating the \
             defining formula gives log 90 for the joint finite-and-archimedean sum"
                .into(),
        );
    }
    if na.is_one() && nb.is_one() {
        notes.push(
            "external context: published computations by Doche place the essential \
             minimum for |a| = |b| = 1 inside [0.2482474, 0.25443678]; the certified \
             bounds reported here enclose but do not reproduce that interval"
                .into(),
        );
    }
    finish_notes(&mut notes, &lower, &upper);

    Ok(BoundReport {
        problem: ProblemEcho { a: a.to_string(), b: b.to_string(), field: Field::Rational },
        lower,
        upper,
        density,
        config: *config,
        notes,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Analyze a Gaussian pair (both parameters must be non-real; real inputs
/// belong to the rational path). No density threshold is computed over Q(i).
pub fn analyze_gaussian(
    a: &GaussianRational,
    b: &GaussianRational,
    config: &Config,
) -> Result<BoundReport> {
    let upper = upper_bound_gaussian(a, b, config.tol)?;
    let lower = best_lower_gaussian(a, b, config.grid_size)?;
    let mut notes = Vec::new();
    push_common_notes(&mut notes, &lower, &upper);
    notes.push(
        "density thresholds are computed for rational parameters only; none is \
         reported over Q(i)"
            .into(),
    );
    finish_notes(&mut notes, &lower, &upper);
    Ok(BoundReport {
        problem: ProblemEcho { a: a.to_string(), b: b.to_string(), field: Field::Gaussian },
        lower,
        upper,
        density: None,
        config: *config,
        notes,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// One re-derived reference constant, graded against its tolerance band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproductionRow {
    pub label: String,
    #[serde(with = "crate::wire::f64_string")]
    pub reference: f64,
    pub computed: ValueWithError,
    pub pass: bool,
}

/// A row passes when the computed value does not exceed the reference
/// (beyond float slack) and lands within the declared band below it.
fn row(label: &str, reference: f64, computed: ValueWithError, band: f64) -> ReproductionRow {
    let pass =
        computed.value <= reference + 1e-12 && computed.value >= reference - band;
    ReproductionRow { label: label.to_string(), reference, computed, pass }
}

/// The valid `reproduce` table identifiers.
pub const REPRODUCE_TABLES: [&str; 4] = ["thm2.9", "thmA", "cor3.9", "thm4.3-examples"];

const SERIES_UNIT_PARTIAL: f64 = 0.3194345111561;
const SERIES_UNIT_TAIL: f64 = 0.0000145758;
const SERIES_UNIT_TOTAL: f64 = 0.3194490869562;
const SERIES_RATIO2_TOTAL: f64 = 0.6461598436469;
const SERIES_RATIO3_TOTAL: f64 = 0.9909205628144;
const UNIT_MINIMUM_REFERENCE: f64 = 0.31944909;
const LN_SQRT3: f64 = 0.5493061443340549;

/// Re-derive one named reference table. Unknown identifiers are rejected
/// with the list of valid names.
pub fn reproduce(table: &str, config: &Config) -> Result<Vec<ReproductionRow>> {
    let rat = |s: &str| parse_rational(s);
    match table {
        "thm2.9" => {
            let one = rat("1")?;
            let s1 = series_omega_center(&one, &one, 20)?;
            let s2 = series_omega_center(&one, &rat("2")?, 15)?;
            let s3 = series_omega_center(&one, &rat("3")?, 7)?;
            let closed = omega_min(&one, &rat("4")?, config.tol, config.series_cap)?;
            let quad = omega(&one, &one, -0.5, config.tol)?;
            Ok(vec![
                row(
                    "series partial sum, |b/a| = 1, N = 20",
                    SERIES_UNIT_PARTIAL,
                    ValueWithError::new(s1.partial_sum, 1e-13),
                    1e-12,
                ),
                row(
                    "geometric tail majorant, |b/a| = 1, N = 20",
                    SERIES_UNIT_TAIL,
                    ValueWithError::new(
                        tail_bound(
                            s1.ratio,
                            20,
                            2.0 * (std::f64::consts::PI - s1.alpha) / std::f64::consts::PI,
                        )?,
                        1e-13,
                    ),
                    1e-9,
                ),
                row(
                    "certified total at or below published, |b/a| = 1, N = 20",
                    SERIES_UNIT_TOTAL,
                    ValueWithError::new(s1.certified_upper(), 2e-13),
                    1e-4,
                ),
                row(
                    "certified total at or below published, |b/a| = 2, N = 15",
                    SERIES_RATIO2_TOTAL,
                    ValueWithError::new(s2.certified_upper(), 2e-13),
                    1e-4,
                ),
                row(
                    "certified total at or below published, |b/a| = 3, N = 7",
                    SERIES_RATIO3_TOTAL,
                    ValueWithError::new(s3.certified_upper(), 2e-13),
                    1e-4,
                ),
                row(
                    "closed form at ratio 4, (1,4)",
                    4.0f64.ln(),
                    closed.value,
                    1e-10,
                ),
                row(
                    "quadrature minimum vs certified total, (1,1)",
                    s1.certified_upper(),
                    quad,
                    2e-5,
                ),
            ])
        }
        "thmA" => {
            let one = rat("1")?;
            let upper = omega_min(&one, &one, config.tol, config.series_cap)?;
            let dens = density_threshold(&one, &one, None, config.tol)?;
            Ok(vec![
                row(
                    "certified upper bound, (1,1)",
                    UNIT_MINIMUM_REFERENCE,
                    upper.value,
                    1e-4,
                ),
                row(
                    "density threshold, (1,1)",
                    UNIT_MINIMUM_REFERENCE,
                    dens.threshold,
                    1e-4,
                ),
            ])
        }
        "cor3.9" => {
            let a = rat("1")?;
            let b = rat("2")?;
            let f1 = FactorPoly::linear(&rat("-1")?);
            let tau = tau_single_factor(&a, &b, &f1, config.grid_size)?;
            let bracket = series_omega_center(&a, &b, 15)?;
            Ok(vec![
                row(
                    "weighted lower bound, (1,2), factor x+1",
                    LN_SQRT3,
                    ValueWithError::new(tau.value, 1e-9),
                    1e-9,
                ),
                row(
                    "weight optimum distance |A1* - 2/3| (pass iff <= 1e-6)",
                    1e-6,
                    ValueWithError::new((tau.a1_star - 2.0 / 3.0).abs(), 0.0),
                    1e-6,
                ),
                row(
                    "upper bracket at or below published, (1,2), N = 15",
                    SERIES_RATIO2_TOTAL,
                    ValueWithError::new(bracket.certified_upper(), 2e-13),
                    1e-4,
                ),
            ])
        }
        "thm4.3-examples" => {
            let mut rows = Vec::new();
            for (a_s, b_s, lo_ref, hi_ref, compare_minimum) in [
                ("1", "5", 4.0f64.ln(), 5.0f64.ln(), true),
                ("1", "4", 3.0f64.ln(), 4.0f64.ln(), true),
                ("2", "9", 4.0f64.ln(), 4.5f64.ln(), false),
            ] {
                let a = rat(a_s)?;
                let b = rat(b_s)?;
                let (lo, hi) = crate::density::interval_thm43(&a, &b)?;
                rows.push(row(
                    &format!("interval lower endpoint, ({a_s},{b_s})"),
                    lo_ref,
                    ValueWithError::new(lo, 1e-15),
                    1e-12,
                ));
                rows.push(row(
                    &format!("interval upper endpoint, ({a_s},{b_s})"),
                    hi_ref,
                    ValueWithError::new(hi, 1e-15),
                    1e-12,
                ));
                rows.push(row(
                    &format!("best lower bound vs interval lower, ({a_s},{b_s})"),
                    lo_ref,
                    ValueWithError::new(
                        best_lower(&a, &b, config.grid_size)?.value,
                        1e-9,
                    ),
                    1e-8,
                ));
                if compare_minimum {
                    rows.push(row(
                        &format!("minimized upper bound vs interval upper, ({a_s},{b_s})"),
                        hi_ref,
                        omega_min(&a, &b, config.tol, config.series_cap)?.value,
                        1e-8,
                    ));
                }
            }
            Ok(rows)
        }
        other => Err(Error::Argument(format!(
            "unknown reproduction table `{other}`; valid tables: {}",
            REPRODUCE_TABLES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn default_config() {
        let c = Config::default();
        assert_eq!(c.tol, 1e-12);
        assert_eq!(c.grid_size, 4096);
        assert_eq!(c.series_cap, 200);
    }

    #[test]
    fn unit_report_shape() {
        let r = analyze(&rat("-1"), &rat("1")).unwrap();
        assert_eq!(r.problem.a, "-1");
        assert_eq!(r.problem.b, "1");
        assert_eq!(r.problem.field, Field::Rational);
        assert!(r.upper.certified);
        assert!(r.upper.value.upper() <= 0.3194490869562);
        assert_eq!(r.lower.method, LowerMethod::Zero);
        assert!(r.density.is_some());
        assert!(r.is_consistent());
        assert!(r.notes.iter().any(|n| n.contains("Doche")));
        assert!(r.notes.iter().any(|n| n.contains("external context")));
        assert!(!r.version.is_empty());
    }

    #[test]
    fn worked_example_note_triggers_on_reduced_pair() {
        let r = analyze(&rat("7/15"), &rat("250/36")).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("worked example")), "{:?}", r.notes);
        let r = analyze(&rat("7/15"), &rat("125/18")).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("worked example")));
        let r = analyze(&rat("1"), &rat("4")).unwrap();
        assert!(!r.notes.iter().any(|n| n.contains("worked example")));
    }

    #[test]
    fn pinned_argument_is_uncertified() {
        let cfg = Config::default();
        let r = analyze_opts(&rat("1"), &rat("1"), Some(-0.5), &cfg).unwrap();
        assert_eq!(r.upper.method, UpperMethod::QuadratureMin);
        assert!(!r.upper.certified);
        assert_eq!(r.upper.t_star, -0.5);
        assert!((r.upper.value.value - 0.3194345111561).abs() < 1.5e-5);
        assert!(r.notes.iter().any(|n| n.contains("quadrature estimate")));
    }

    #[test]
    fn gaussian_report_has_no_density() {
        let g = |s: &str| crate::exact::gaussian::parse_gaussian(s).unwrap();
        let r = analyze_gaussian(&g("i"), &g("2i"), &Config::default()).unwrap();
        assert_eq!(r.problem.field, Field::Gaussian);
        assert!(r.density.is_none());
        assert!(r.notes.iter().any(|n| n.contains("density thresholds")));
        assert!((r.upper.value.value - 2.0f64.ln()).abs() < 1e-10);
        assert_eq!(r.lower.method, LowerMethod::Zero);
        assert!(r.is_consistent());
    }

    #[test]
    fn report_json_round_trips_in_declared_order() {
        let r = analyze(&rat("1"), &rat("4")).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: BoundReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let order = ["\"problem\"", "\"lower\"", "\"upper\"", "\"density\"", "\"config\"", "\"notes\"", "\"version\""];
        let mut last = 0;
        for key in order {
            let pos = text.find(key).unwrap_or_else(|| panic!("missing {key}"));
            assert!(pos >= last, "{key} out of order");
            last = pos;
        }
        // numeric leaves travel as strings
        assert!(text.contains(r#""value":"1.3862943611198906""#), "{text}");
    }

    #[test]
    fn reproduction_tables_all_pass() {
        let cfg = Config::default();
        for table in REPRODUCE_TABLES {
            let rows = reproduce(table, &cfg).unwrap();
            assert!(!rows.is_empty());
            for r in &rows {
                assert!(r.pass, "table {table}, row `{}`: computed {} vs reference {}", r.label, r.computed.value, r.reference);
            }
        }
    }

    #[test]
    fn unknown_table_is_rejected_with_the_valid_names() {
        let err = reproduce("bogus", &Config::default()).unwrap_err();
        let msg = err.to_string();
        for t in REPRODUCE_TABLES {
            assert!(msg.contains(t), "{msg}");
        }
    }
}
