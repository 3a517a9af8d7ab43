use thiserror::Error;

/// Errors surfaced by the bound pipeline.
///
/// Every variant carries a human-readable message naming the offending input
/// or the failed inequality, so CLI users see actionable diagnostics.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is structurally invalid (zero where nonzero is required,
    /// a non-prime where a prime is required, a non-finite float, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A parameter lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition does not hold; the message names the
    /// inequality that failed.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Text could not be parsed; carries the offending token.
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    /// Integer factorization hit the configured bound.
    #[error("factoring bound exceeded: {0}")]
    FactorBound(String),

    /// An input shape the implementation deliberately does not cover.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Internal consistency violation (e.g. a lower bound exceeding an upper
    /// bound beyond tolerance). Indicates a bug, never bad user input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
