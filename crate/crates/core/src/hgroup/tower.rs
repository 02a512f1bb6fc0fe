use num_integer::Integer;
use num_traits::One;

use super::LocalPresentation;
use crate::arith::Int;
use crate::error::{Error, Result};
use crate::linalg::{index, Lattice};

/// Finite part `H_1 ⊆ … ⊆ H_n` of an exhausting chain together with the
/// decreasing duals `G_k = H_k*`. Levels are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<Lattice>,
    duals: Vec<Lattice>,
}

impl Tower {
    /// `H_k = H ∩ (1/c_k) Z^d` for a divisibility chain `c_1 | c_2 | …`.
    pub fn from_chain(h: &LocalPresentation, chain: &[Int]) -> Result<Tower> {
        if chain.is_empty() {
            return Err(Error::InvalidArgument("empty chain".into()));
        }
        for w in chain.windows(2) {
            if w[0] < Int::one() || !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidArgument(format!(
                    "chain entries {} and {} do not divide",
                    w[0], w[1]
                )));
            }
        }
        let duals: Vec<Lattice> = chain.iter().map(|c| h.truncation_dual(c)).collect();
        let levels = duals.iter().map(Lattice::dual).collect();
        Ok(Tower { levels, duals })
    }

    /// Tower from explicit increasing lattices containing Z^d.
    pub fn from_levels(levels: Vec<Lattice>) -> Result<Tower> {
        let Some(first) = levels.first() else {
            return Err(Error::InvalidArgument("empty tower".into()));
        };
        if !Lattice::standard(first.dim()).is_sublattice_of(first) {
            return Err(Error::MissingStandardLattice);
        }
        for w in levels.windows(2) {
            if !w[0].is_sublattice_of(&w[1]) {
                return Err(Error::NotSublattice);
            }
        }
        let duals = levels.iter().map(Lattice::dual).collect();
        Ok(Tower { levels, duals })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self) -> usize {
        self.levels[0].dim()
    }

    pub fn levels(&self) -> &[Lattice] {
        &self.levels
    }

    pub fn duals(&self) -> &[Lattice] {
        &self.duals
    }

    /// `H_n`, 1-based.
    pub fn level(&self, n: usize) -> &Lattice {
        &self.levels[n - 1]
    }

    /// `G_n`, 1-based.
    pub fn dual(&self, n: usize) -> &Lattice {
        &self.duals[n - 1]
    }

    /// `[Z^d : G_n]`, which equals `[H_n : Z^d]`.
    pub fn index(&self, n: usize) -> Int {
        index(self.dual(n), &Lattice::standard(self.dim()))
            .expect("tower duals lie in Z^d")
            .to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::hgroup::{inverted, HGroupPresentation};
    use crate::linalg::{IntMat, RatMat};

    #[test]
    fn dyadic_tower() {
        let h: HGroupPresentation = LocalPresentation::oplus(&[inverted(2)]).into();
        let t = h.tower(4).unwrap();
        let idx: Vec<Int> = (1..=4).map(|n| t.index(n)).collect();
        // v_2(n!) for n = 1..4 is 0, 1, 1, 3.
        assert_eq!(idx, [1, 2, 2, 8].map(Int::from));
        assert_eq!(
            t.level(2),
            &Lattice::new(&RatMat::diagonal(&[rat(1, 2)])).unwrap()
        );
    }

    #[test]
    fn standard_tower_is_constant() {
        let h: HGroupPresentation = LocalPresentation::standard(2).into();
        let t = h.tower(5).unwrap();
        assert!(t.levels().iter().all(|l| *l == Lattice::standard(2)));
        assert!(t.duals().iter().all(|l| *l == Lattice::standard(2)));
    }

    #[test]
    fn second_level_of_two_three() {
        let h: HGroupPresentation = LocalPresentation::oplus(&[inverted(2), inverted(3)]).into();
        let t = h.tower(3).unwrap();
        let g2 = Lattice::from_int(&IntMat::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(t.dual(2), &g2);
        for n in 1..3 {
            assert!(t.dual(n + 1).is_sublattice_of(t.dual(n)));
            assert!(t.level(n).is_sublattice_of(t.level(n + 1)));
        }
        assert_eq!(t.index(3), Int::from(6));
    }

    #[test]
    fn chains_must_divide() {
        let h = LocalPresentation::standard(1);
        assert!(Tower::from_chain(&h, &[Int::from(2), Int::from(3)]).is_err());
    }
}
