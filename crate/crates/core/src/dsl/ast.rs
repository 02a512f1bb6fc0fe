use crate::arith::Rat;
use crate::error::Result;
use crate::hgroup::{Component, LocalPresentation};
use crate::linalg::RatMat;

/// Syntax tree of a group expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    /// `oplus(C_1, …, C_d)`.
    Oplus(Vec<Component>),
    /// `gen(v)`, meaning `Z^d + Z v`.
    Gen(Vec<Rat>),
    /// `mat(A) * e`, the image `A·e`.
    Mat(RatMat, Box<GroupExpr>),
    /// `e_1 + … + e_k`.
    Sum(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn dim(&self) -> usize {
        match self {
            GroupExpr::Oplus(c) => c.len(),
            GroupExpr::Gen(v) => v.len(),
            GroupExpr::Mat(a, _) => a.rows(),
            GroupExpr::Sum(items) => items.first().map_or(0, GroupExpr::dim),
        }
    }

    /// The local presentation denoted by the expression.
    pub fn elaborate(&self) -> Result<LocalPresentation> {
        match self {
            GroupExpr::Oplus(c) => Ok(LocalPresentation::oplus(c)),
            GroupExpr::Gen(v) => Ok(LocalPresentation::generated_by(v)),
            GroupExpr::Mat(a, e) => e.elaborate()?.apply_matrix(a),
            GroupExpr::Sum(items) => {
                let mut acc = LocalPresentation::standard(self.dim());
                for item in items {
                    acc = acc.sum(&item.elaborate()?)?;
                }
                Ok(acc)
            }
        }
    }
}
