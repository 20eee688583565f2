use thiserror::Error;

/// Errors shared by all analysis modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain (0, ∞).
    #[error("input must be positive and finite, got {0}")]
    NonPositiveInput(f64),

    /// A sampled generator was asked for a point it does not tabulate.
    /// Sampled generators never interpolate.
    #[error("abscissa {0} is not tabulated (sampled generators do not interpolate)")]
    SampleMiss(f64),

    /// The result is outside the representable range even after log-domain
    /// evaluation; callers should stay with `log_eval`.
    #[error("log-domain value {log_value} maps outside the representable f64 range; use log-domain evaluation")]
    Overflow { log_value: f64 },

    /// Degree estimation needs at least two distinct dilation factors t ≠ 1.
    #[error("grid is degenerate for degree estimation: fewer than two distinct t != 1")]
    DegenerateGrid,

    /// The regression design cannot be solved: fewer than three distinct
    /// abscissae, or numerically collinear columns.
    #[error("rank-deficient design: {0}")]
    RankDeficient(String),

    /// Tabulated samples must lie in (0, ∞) × (0, ∞).
    #[error("sample ({x}, {fx}) is outside (0, \u{221e})")]
    NonPositiveSample { x: f64, fx: f64 },

    /// Duplicate abscissae are rejected at table construction.
    #[error("duplicate abscissa {0} in sample table")]
    DuplicateAbscissa(f64),

    /// The λ-diagnostic was given a reference abscissa that is not tabulated.
    #[error("reference abscissa {0} is not among the samples")]
    MissingReference(f64),

    /// Invalid constructor parameter (e.g. non-positive scale or base).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A grid failed its structural invariants.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Malformed CSV input.
    #[error("csv parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },

    /// An evaluation failed at a specific probe point.
    #[error("evaluation failed at probe ({x}, {y}): {source}")]
    ProbeFailure {
        x: f64,
        y: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_probe(self, x: f64, y: f64) -> Error {
        Error::ProbeFailure {
            x,
            y,
            source: Box::new(self),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
