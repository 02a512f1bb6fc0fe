use thiserror::Error;

/// Parse and elaboration failures of the group DSL. Offsets are byte
/// offsets into the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("dimension mismatch at byte {offset}: expected {expected}, found {found}")]
    DimensionMismatch {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("bad denominator at byte {offset}: Z[1/{n}] needs n >= 2")]
    BadDenominator { offset: usize, n: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::DimensionMismatch { offset, .. }
            | ParseError::BadDenominator { offset, .. } => *offset,
        }
    }
}
