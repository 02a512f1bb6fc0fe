//! Finite quotients `Z^d / G`, points of the inverse limit truncated to a
//! finite depth, the invariant measure, the metric and the spectrum.

mod checks;
mod spectrum;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::hgroup::Tower;
use crate::linalg::Lattice;

pub use checks::{
    commuting_square_check, duality_check, factor_map_check, product_check, CharacterGroup,
};
pub use spectrum::{spectrum, Eigenvalue};

/// A coset of `G` in `Z^d`, given by its representative in the Hermite box.
pub type Coset = Vec<i64>;

/// The translation action of `Z^d` on `Z^d / G`.
///
/// Representatives are the points of the box `∏ [0, h_ii)` read off the
/// lower-triangular Hermite basis of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOdometer {
    g: Lattice,
    /// Hermite basis, `h[i][j]` = row `i`, column `j`.
    h: Vec<Vec<i64>>,
    card: usize,
}

impl FiniteOdometer {
    pub fn new(g: &Lattice) -> Result<Self> {
        let basis = g.integer_basis().ok_or(Error::NotSublattice)?;
        let d = g.dim();
        let mut h = vec![vec![0i64; d]; d];
        for (i, row) in h.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = basis[(i, j)]
                    .to_i64()
                    .ok_or_else(|| Error::InvalidArgument("quotient too large".into()))?;
            }
        }
        let card = (0..d)
            .try_fold(1usize, |acc, i| acc.checked_mul(h[i][i] as usize))
            .ok_or_else(|| Error::InvalidArgument("quotient too large".into()))?;
        Ok(FiniteOdometer {
            g: g.clone(),
            h,
            card,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    /// `[Z^d : G]`.
    pub fn card(&self) -> usize {
        self.card
    }

    /// Box side lengths `h_11, …, h_dd`.
    pub fn shape(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.h[i][i]).collect()
    }

    /// Representative of `x + G`.
    pub fn reduce(&self, x: &[i64]) -> Coset {
        assert_eq!(x.len(), self.dim(), "dimension mismatch");
        let mut y = x.to_vec();
        for i in 0..self.dim() {
            let q = y[i].div_euclid(self.h[i][i]);
            if q != 0 {
                for (k, yk) in y.iter_mut().enumerate().skip(i) {
                    *yk -= q * self.h[k][i];
                }
            }
        }
        y
    }

    /// `φ_G(k)(x) = k + x + G`.
    pub fn act(&self, k: &[i64], x: &[i64]) -> Coset {
        let s: Vec<i64> = k.iter().zip(x).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    /// Position of a representative in the enumeration order of [`reps`].
    ///
    /// [`reps`]: FiniteOdometer::reps
    pub fn index_of(&self, x: &[i64]) -> usize {
        x.iter()
            .zip(self.shape())
            .fold(0usize, |acc, (&xi, n)| acc * n as usize + xi as usize)
    }

    pub fn rep(&self, mut idx: usize) -> Coset {
        let shape = self.shape();
        let mut x = vec![0i64; self.dim()];
        for i in (0..self.dim()).rev() {
            let n = shape[i] as usize;
            x[i] = (idx % n) as i64;
            idx /= n;
        }
        x
    }

    /// All representatives in lexicographic order.
    pub fn reps(&self) -> impl Iterator<Item = Coset> + '_ {
        (0..self.card).map(|i| self.rep(i))
    }

    pub fn random_rep(&self, rng: &mut impl Rng) -> Coset {
        self.rep(rng.gen_range(0..self.card))
    }

    /// Normalized counting measure of a single coset.
    pub fn measure(&self) -> Rat {
        Rat::new(1.into(), self.card.into())
    }
}

/// Finite-depth model of the odometer of a tower: the quotients
/// `Z^d / G_n` and the maps between them.
#[derive(Clone, Debug)]
pub struct OdometerTower {
    tower: Tower,
    levels: Vec<FiniteOdometer>,
}

/// A point truncated to the first `depth` levels; `cosets[n - 1]` lies in
/// `Z^d / G_n` and consecutive entries are compatible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OdoPoint {
    pub cosets: Vec<Coset>,
}

impl OdometerTower {
    pub fn new(tower: Tower) -> Result<Self> {
        let levels = tower
            .duals()
            .iter()
            .map(FiniteOdometer::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(OdometerTower { tower, levels })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self) -> usize {
        self.tower.dim()
    }

    /// `Z^d / G_n`, 1-based.
    pub fn level(&self, n: usize) -> &FiniteOdometer {
        &self.levels[n - 1]
    }

    /// `q_n : Z^d / G_{n+1} → Z^d / G_n`.
    pub fn project(&self, n: usize, x: &[i64]) -> Coset {
        self.level(n).reduce(x)
    }

    /// The point determined by a coset at the deepest level.
    pub fn point_from_top(&self, x: &[i64]) -> OdoPoint {
        OdoPoint {
            cosets: self.levels.iter().map(|f| f.reduce(x)).collect(),
        }
    }

    /// Image of `m ∈ Z^d` in the inverse limit.
    pub fn point_of(&self, m: &[i64]) -> OdoPoint {
        self.point_from_top(m)
    }

    pub fn random_point(&self, rng: &mut impl Rng) -> OdoPoint {
        let top = self.levels.last().expect("nonempty tower").random_rep(rng);
        self.point_from_top(&top)
    }

    pub fn is_coherent(&self, x: &OdoPoint) -> bool {
        x.cosets.len() == self.depth()
            && (1..self.depth()).all(|n| self.project(n, &x.cosets[n]) == x.cosets[n - 1])
    }

    pub fn act(&self, k: &[i64], x: &OdoPoint) -> OdoPoint {
        OdoPoint {
            cosets: self
                .levels
                .iter()
                .zip(&x.cosets)
                .map(|(f, c)| f.act(k, c))
                .collect(),
        }
    }

    /// Measure of a cylinder over a level-`n` coset, `[Z^d : G_n]^{-1}`.
    pub fn measure_cylinder(&self, n: usize, coset: &[i64]) -> Result<Rat> {
        if n == 0 || n > self.depth() {
            return Err(Error::DepthExceeded(self.depth()));
        }
        let f = self.level(n);
        if f.reduce(coset) != coset {
            return Err(Error::InvalidArgument(
                "coset is not a box representative".into(),
            ));
        }
        Ok(f.measure())
    }

    /// `max { 1/n : π_n(x) ≠ π_n(y) }` over the available levels, or 0.
    pub fn metric(&self, x: &OdoPoint, y: &OdoPoint) -> Rat {
        x.cosets
            .iter()
            .zip(&y.cosets)
            .position(|(a, b)| a != b)
            .map_or_else(
                || Rat::from_integer(0.into()),
                |i| Rat::new(1.into(), (i + 1).into()),
            )
    }
}
