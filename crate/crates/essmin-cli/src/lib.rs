//! Command-line front end: parse parameters, run the bound pipeline, and
//! render reports as aligned text or stable JSON.
//!
//! Exit codes: 0 on success with a consistent report (and, for `reproduce`,
//! all rows passing); 1 when a report is internally inconsistent, a
//! reproduction row fails, or an internal error occurs; 2 on usage, parse,
//! and precondition errors.

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use essmin::{
    analyze_gaussian, analyze_opts, density_threshold, gamma, parse_gaussian, parse_rational,
    reproduce, BoundReport, Config, DensityResult, Error, ReproductionRow, ValueWithError,
};

#[derive(Parser)]
#[command(
    name = "essmin",
    version,
    about = "Certified bounds and density thresholds for the essential minimum of h(x) + h(a*x + b)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute lower and upper bounds (and, over Q, the density threshold)
    /// for one parameter pair.
    Bounds {
        /// First parameter: a rational like `-1`, `3/2`, or a Gaussian
        /// rational like `1+2i`, `-3/4i`.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Second parameter, same formats as --a.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Pin the upper-bound functional at this argument instead of
        /// minimizing (rational parameters only; result is uncertified).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        /// Absolute tolerance for circle means and series tails
        /// (default 1e-12; the ESSMIN_TOL environment variable overrides
        /// the default, and this flag overrides both).
        #[arg(long)]
        tol: Option<f64>,
        /// Grid resolution for minima over circles.
        #[arg(long)]
        grid: Option<usize>,
        /// Hard cap on series length when auto-selecting the truncation.
        #[arg(long)]
        series_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the density-interval threshold for rational parameters, or
    /// evaluate the underlying functional at a pinned argument.
    Density {
        /// First parameter (rational only).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Second parameter (rational only).
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Evaluate at this argument instead of minimizing.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Comma-separated positive rational radii, one per prime in the
        /// denominator support of (a, b); defaults to all ones.
        #[arg(long)]
        radii: Option<String>,
        /// Absolute tolerance (same resolution order as for bounds).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-derive a named table of reference constants and grade each row.
    Reproduce {
        /// Table identifier: thm2.9, thmA, cor3.9, or thm4.3-examples.
        #[arg(long)]
        table: String,
        /// Absolute tolerance (same resolution order as for bounds).
        #[arg(long)]
        tol: Option<f64>,
        /// Grid resolution for minima over circles.
        #[arg(long)]
        grid: Option<usize>,
        /// Hard cap on series length when auto-selecting the truncation.
        #[arg(long)]
        series_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Parse arguments from the process environment and run. Returns the exit
/// code for the process.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Bounds { a, b, t, tol, grid, series_cap, format } => {
            let config = build_config(tol, grid, series_cap)?;
            let report = run_bounds(&a, &b, t, &config)?;
            match format {
                Format::Text => print!("{}", render_report_text(&report)),
                Format::Json => println!("{}", to_json(&report)),
            }
            Ok(if report.is_consistent() { 0 } else { 1 })
        }
        Command::Density { a, b, x, radii, tol, format } => {
            let config = build_config(tol, None, None)?;
            let result = run_density(&a, &b, x, radii.as_deref(), &config)?;
            match format {
                Format::Text => print!("{}", render_density_text(&result)),
                Format::Json => println!("{}", to_json(&result)),
            }
            Ok(0)
        }
        Command::Reproduce { table, tol, grid, series_cap, format } => {
            let config = build_config(tol, grid, series_cap)?;
            let rows = reproduce(&table, &config)?;
            let all_pass = rows.iter().all(|r| r.pass);
            match format {
                Format::Text => print!("{}", render_rows_text(&table, &rows)),
                Format::Json => {
                    println!("{}", to_json(&ReproduceOutput { table: &table, all_pass, rows: &rows }))
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

#[derive(Serialize)]
struct ReproduceOutput<'a> {
    table: &'a str,
    all_pass: bool,
    rows: &'a [ReproductionRow],
}

/// Tolerance resolution: flag beats the ESSMIN_TOL environment variable,
/// which beats the default.
fn build_config(
    tol: Option<f64>,
    grid: Option<usize>,
    series_cap: Option<usize>,
) -> Result<Config, Error> {
    let mut config = Config::default();
    let tol = match tol {
        Some(t) => Some(t),
        None => match std::env::var("ESSMIN_TOL") {
            Ok(raw) => Some(raw.parse::<f64>().map_err(|_| Error::Parse {
                token: raw,
                reason: "ESSMIN_TOL must be a floating-point number".into(),
            })?),
            Err(_) => None,
        },
    };
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Argument(format!(
                "tolerance must be a positive finite number, got {t}"
            )));
        }
        config.tol = t;
    }
    if let Some(g) = grid {
        if g < 8 {
            return Err(Error::Argument(format!("grid must be at least 8, got {g}")));
        }
        config.grid_size = g;
    }
    if let Some(cap) = series_cap {
        if cap == 0 {
            return Err(Error::Argument("series cap must be at least 1".into()));
        }
        config.series_cap = cap;
    }
    Ok(config)
}

fn run_bounds(a: &str, b: &str, t: Option<f64>, config: &Config) -> Result<BoundReport, Error> {
    let ga = parse_gaussian(a)?;
    let gb = parse_gaussian(b)?;
    if ga.is_real() && gb.is_real() {
        analyze_opts(&ga.re().clone(), &gb.re().clone(), t, config)
    } else {
        if t.is_some() {
            return Err(Error::Argument(
                "--t pins the functional for rational parameters only".into(),
            ));
        }
        analyze_gaussian(&ga, &gb, config)
    }
}

fn run_density(
    a: &str,
    b: &str,
    x: Option<f64>,
    radii: Option<&str>,
    config: &Config,
) -> Result<DensityResult, Error> {
    let a = parse_rational(a)?;
    let b = parse_rational(b)?;
    let radii = radii.map(parse_radii).transpose()?;
    match x {
        None => density_threshold(&a, &b, radii, config.tol),
        Some(x) => {
            let radii = match radii {
                Some(r) => r,
                None => {
                    let primes = essmin::exact::rational::prime_support(&a, &b)?;
                    vec![BigRational::from_integer(1.into()); primes.len()]
                }
            };
            let value = gamma(&a, &b, x, &radii, config.tol)?;
            Ok(DensityResult {
                threshold: value,
                x_star: x,
                radii,
                interval_note: "point evaluation at the pinned argument; not a minimized \
                                threshold"
                    .into(),
            })
        }
    }
}

fn parse_radii(raw: &str) -> Result<Vec<BigRational>, Error> {
    raw.split(',')
        .map(|piece| parse_rational(piece.trim()))
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}

/// Wire token of a serde-renamed enum variant, for text output.
fn wire_token<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn format_value(v: &ValueWithError) -> String {
    format!("{} (abs err <= {})", v.value, v.abs_error)
}

fn render_report_text(report: &BoundReport) -> String {
    let mut out = String::new();
    let field = wire_token(&report.problem.field);
    out.push_str(&format!(
        "problem      a = {}  b = {}  over {}\n",
        report.problem.a, report.problem.b, field
    ));
    out.push_str(&format!(
        "upper bound  {}  t* = {}  method {}  {}\n",
        format_value(&report.upper.value),
        report.upper.t_star,
        wire_token(&report.upper.method),
        if report.upper.certified { "certified" } else { "uncertified" },
    ));
    out.push_str(&format!(
        "lower bound  {}  method {}\n",
        report.lower.value,
        wire_token(&report.lower.method),
    ));
    if let Some(witness) = &report.lower.witness {
        out.push_str(&format!("             witness: {witness}\n"));
    }
    if let Some(density) = &report.density {
        out.push_str(&format!(
            "density      threshold {}  x* = {}  radii [{}]\n",
            format_value(&density.threshold),
            density.x_star,
            density
                .radii
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        ));
        out.push_str(&format!("             {}\n", density.interval_note));
    }
    out.push_str(&format!(
        "consistent   {}\n",
        if report.is_consistent() { "yes" } else { "NO" }
    ));
    for note in &report.notes {
        out.push_str(&format!("note         {note}\n"));
    }
    out.push_str(&format!(
        "config       tol = {}  grid = {}  series cap = {}\n",
        report.config.tol, report.config.grid_size, report.config.series_cap
    ));
    out.push_str(&format!("version      {}\n", report.version));
    out
}

fn render_density_text(result: &DensityResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("threshold    {}\n", format_value(&result.threshold)));
    out.push_str(&format!("x*           {}\n", result.x_star));
    out.push_str(&format!(
        "radii        [{}]\n",
        result
            .radii
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    ));
    out.push_str(&format!("interval     {}\n", result.interval_note));
    out
}

fn render_rows_text(table: &str, rows: &[ReproductionRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!("table: {table}\n"));
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
    for row in rows {
        out.push_str(&format!(
            "{}  {:<width$}  reference {:<22}  computed {}\n",
            if row.pass { "PASS" } else { "FAIL" },
            row.label,
            row.reference,
            format_value(&row.computed),
        ));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        out.push_str(&format!("all {} rows pass\n", rows.len()));
    } else {
        out.push_str(&format!("{failed} of {} rows FAILED\n", rows.len()));
    }
    out
}
