use thiserror::Error;

/// Errors produced by the fitting, evaluation and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The resultant vector (S, C) vanished so no mean direction exists.
    #[error("degenerate direction: resultant length {resultant:.3e} is zero relative to total weight {weight:.3e}")]
    DegenerateDirection { resultant: f64, weight: f64 },

    #[error("design error: {reason} (columns {columns:?})")]
    Design { reason: String, columns: Vec<usize> },

    #[error("component {component} is empty: effective size {weight:.3e} at or below threshold {threshold:.3e}")]
    EmptyComponent {
        component: usize,
        weight: f64,
        threshold: f64,
    },

    #[error("all {} starts failed: {}", causes.len(), causes.join("; "))]
    FittingFailed { causes: Vec<String> },

    #[error("bootstrap unreliable: {failed} of {total} replicate fits failed")]
    BootstrapUnreliable { failed: usize, total: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("cannot parse row {row}, column `{column}`: {value:?}")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag used by the CLI error record.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::DegenerateDirection { .. } => "degenerate_direction",
            Error::Design { .. } => "design",
            Error::EmptyComponent { .. } => "empty_component",
            Error::FittingFailed { .. } => "fitting_failed",
            Error::BootstrapUnreliable { .. } => "bootstrap_unreliable",
            Error::Degenerate(_) => "degenerate",
            Error::MissingColumn(_) => "missing_column",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
            Error::Config(_) => "config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
