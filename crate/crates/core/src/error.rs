use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error("system too large for dense eigendecomposition: Hilbert dimension {dim} exceeds {max}; use evolve() instead")]
    TooLarge { dim: usize, max: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("did not converge after {iterations} iterations: {what}")]
    NotConverged { what: String, iterations: usize },

    #[error("target unreachable: {0}")]
    Unreachable(String),

    #[error("{context}: {source}")]
    AtPoint {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Wraps an error with the sweep point it came from.
    pub fn at(self, context: impl Into<String>) -> Self {
        Error::AtPoint {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Numerical(_) | Error::NotConverged { .. } | Error::Unreachable(_) => true,
            Error::InvalidState(_) => true,
            Error::AtPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
