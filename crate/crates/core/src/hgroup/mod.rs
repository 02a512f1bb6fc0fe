//! Groups `Z^d ⊆ H ⊆ Q^d`: finite local presentations, programs producing
//! an increasing chain of lattices, and approximating towers.

mod local;
mod tower;

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorial, Rat};
use crate::error::{Error, Result};
use crate::linalg::{index, Lattice, RatMat, Supernatural};

pub use local::{inverted, Component, LocalEntry, LocalPresentation};
pub use tower::Tower;

/// Produces the lattices `H_1 = Z^d ⊆ H_2 ⊆ …` of a group that has no finite
/// local description.
pub trait LevelGenerator: Send + Sync {
    fn dim(&self) -> usize;

    /// `H_n` for `n ≥ 1`.
    fn level(&self, n: usize) -> Result<Lattice>;
}

/// A group known only through a chain of lattices, explored up to a cap.
#[derive(Clone)]
pub struct ProgramPresentation {
    generator: Arc<dyn LevelGenerator>,
    depth_cap: usize,
}

impl ProgramPresentation {
    pub fn new(generator: Arc<dyn LevelGenerator>, depth_cap: usize) -> Self {
        ProgramPresentation {
            generator,
            depth_cap: depth_cap.max(1),
        }
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    pub fn level(&self, n: usize) -> Result<Lattice> {
        self.generator.level(n)
    }
}

impl fmt::Debug for ProgramPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProgramPresentation")
            .field("dim", &self.dim())
            .field("depth_cap", &self.depth_cap)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum HGroupPresentation {
    Local(LocalPresentation),
    Program(ProgramPresentation),
}

/// Superindex together with whether it is exact. Program presentations only
/// see the levels up to their depth cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superindex {
    pub value: Supernatural,
    pub complete: bool,
}

impl From<LocalPresentation> for HGroupPresentation {
    fn from(h: LocalPresentation) -> Self {
        HGroupPresentation::Local(h)
    }
}

impl HGroupPresentation {
    pub fn dim(&self) -> usize {
        match self {
            HGroupPresentation::Local(h) => h.dim(),
            HGroupPresentation::Program(p) => p.dim(),
        }
    }

    pub fn as_local(&self) -> Result<&LocalPresentation> {
        match self {
            HGroupPresentation::Local(h) => Ok(h),
            HGroupPresentation::Program(_) => Err(Error::UnsupportedPresentation),
        }
    }

    /// Local presentations are canonical on construction.
    pub fn canonicalize(&self) -> Result<HGroupPresentation> {
        Ok(HGroupPresentation::Local(self.as_local()?.clone()))
    }

    pub fn member(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        match self {
            HGroupPresentation::Local(h) => Ok(h.contains(v)),
            HGroupPresentation::Program(p) => {
                for n in 1..=p.depth_cap {
                    if p.level(n)?.contains(v) {
                        return Ok(true);
                    }
                }
                Err(Error::DepthExceeded(p.depth_cap))
            }
        }
    }

    pub fn equal(&self, other: &HGroupPresentation) -> Result<bool> {
        let (a, b) = (self.as_local()?, other.as_local()?);
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        Ok(a == b)
    }

    pub fn superindex(&self) -> Result<Superindex> {
        match self {
            HGroupPresentation::Local(h) => Ok(Superindex {
                value: h.superindex(),
                complete: true,
            }),
            HGroupPresentation::Program(p) => {
                let top = p.level(p.depth_cap)?;
                let idx = index(&Lattice::standard(p.dim()), &top)?;
                // Exponents are lower bounds: later levels may add more.
                Ok(Superindex {
                    value: Supernatural::from_int(idx.numer()),
                    complete: false,
                })
            }
        }
    }

    pub fn is_free(&self) -> Result<bool> {
        Ok(self.as_local()?.is_free())
    }

    pub fn apply_matrix(&self, a: &RatMat) -> Result<HGroupPresentation> {
        Ok(HGroupPresentation::Local(self.as_local()?.apply_matrix(a)?))
    }

    pub fn direct_sum(&self, other: &HGroupPresentation) -> Result<HGroupPresentation> {
        Ok(HGroupPresentation::Local(
            self.as_local()?.direct_sum(other.as_local()?),
        ))
    }

    /// The tower `H_n = H ∩ (1/n!) Z^d` for local presentations, or the
    /// program's own levels.
    pub fn tower(&self, depth: usize) -> Result<Tower> {
        if depth == 0 {
            return Err(Error::InvalidArgument(
                "tower depth must be at least 1".into(),
            ));
        }
        match self {
            HGroupPresentation::Local(h) => {
                let chain: Vec<_> = (1..=depth as u64).map(factorial).collect();
                Tower::from_chain(h, &chain)
            }
            HGroupPresentation::Program(p) => {
                if depth > p.depth_cap {
                    return Err(Error::DepthExceeded(p.depth_cap));
                }
                let levels = (1..=depth)
                    .map(|n| p.level(n))
                    .collect::<Result<Vec<_>>>()?;
                Tower::from_levels(levels)
            }
        }
    }
}
