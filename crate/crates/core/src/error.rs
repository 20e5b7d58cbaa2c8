use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the set is empty")]
    EmptySet,
    #[error("point is not in the set")]
    NotInSet,
    #[error("point is not in the graph of the mapping")]
    NotInGraph,
    #[error("point is not in the domain")]
    NotInDomain,
    #[error("lambda must be nonnegative")]
    NegativeLambda,
    #[error("function value at the point differs from the level")]
    NotOnLevelSet,
    #[error("point is not in the sublevel set")]
    NotInSublevelSet,
    #[error("outer function is not nondecreasing")]
    NotMonotone,
    #[error("optimal value function takes the value -infinity")]
    ImproperValue,
    #[error("point is not an optimal solution")]
    NotASolution,
    #[error("input set is empty")]
    EmptyInput,
    #[error("decomposition is not admissible")]
    NotADecomposition,
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable variant name used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptySet => "EmptySet",
            Error::NotInSet => "NotInSet",
            Error::NotInGraph => "NotInGraph",
            Error::NotInDomain => "NotInDomain",
            Error::NegativeLambda => "NegativeLambda",
            Error::NotOnLevelSet => "NotOnLevelSet",
            Error::NotInSublevelSet => "NotInSublevelSet",
            Error::NotMonotone => "NotMonotone",
            Error::ImproperValue => "ImproperValue",
            Error::NotASolution => "NotASolution",
            Error::EmptyInput => "EmptyInput",
            Error::NotADecomposition => "NotADecomposition",
            Error::InvalidFunction(_) => "InvalidFunction",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
