//! The group description language and the report format.

mod ast;
mod error;
mod parser;
mod print;
mod report;

pub use ast::GroupExpr;
pub use error::ParseError;
pub use parser::{parse, parse_matrix, parse_vector};
pub use print::{canonical_expr, canonical_text, fmt_witness};
pub use report::Report;

use crate::error::Result;
use crate::hgroup::LocalPresentation;

/// Parses and elaborates a group expression.
pub fn parse_group(text: &str) -> Result<LocalPresentation> {
    parse(text)?.elaborate()
}
