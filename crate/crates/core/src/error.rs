use thiserror::Error;

use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lattice is not contained in the claimed superlattice")]
    NotSublattice,
    #[error("group is not contained in the claimed supergroup")]
    NotSubgroup,
    #[error("image group does not contain Z^d")]
    MissingStandardLattice,
    #[error("operation is not supported for this presentation kind")]
    UnsupportedPresentation,
    #[error("membership undecided within depth cap {0}")]
    DepthExceeded(usize),
    #[error("no generator pair with a,d > 0, b,c >= 0, ad-bc > 0: {0}")]
    BadGenerators(String),
    #[error("operation needs dimension {0}")]
    UnsupportedDimension(usize),
    #[error("group is not dense in Q^d")]
    NotDense,
    #[error("search exhausted after {0} candidates")]
    SearchExhausted(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
