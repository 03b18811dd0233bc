use thiserror::Error;

/// Errors raised by the library. Search results that merely come back empty
/// are not errors; see [`crate::outcome::SearchOutcome`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported uniformity k={0}: operation is defined for 3-graphs only")]
    UnsupportedUniformity(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inadmissible design: {0}")]
    Admissibility(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("search failed: {0}")]
    SearchFailure(String),

    /// An intersecting 3-graph with at least 11 edges fit none of the
    /// Kostochka–Mubayi templates. Carries a diagnostic dump of the family.
    #[error("intersecting family fits no Kostochka-Mubayi template: {0}")]
    Unclassified(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
