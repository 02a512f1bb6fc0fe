//! First cohomology of odometers through their finite quotients: cocycles,
//! the explicit construction from `h ∈ G*`, the trace, and co-invariants.

mod build;
mod cocycle;

use num_traits::One;
use rand::Rng;

use crate::arith::{valuation_int, Int, Rat};
use crate::error::{Error, Result};
use crate::hgroup::{HGroupPresentation, LocalPresentation, Tower};
use crate::linalg::{index, smith_form, Exponent, IntMat, Lattice, Supernatural};
use crate::odometer::{FiniteOdometer, OdometerTower};

pub use build::{alpha_map, build_cocycle, GeneratorPair};
pub use cocycle::Cocycle1;

/// `H^1` of the odometer of `H`: the group itself, with the finite levels
/// `H^1(Z^d / G_n) ≅ Hom(G_n, Z) ≅ H_n` used to realize it.
#[derive(Clone, Debug)]
pub struct H1Presentation {
    pub group: LocalPresentation,
    pub tower: Tower,
}

pub fn h1_presentation(h: &HGroupPresentation, depth: usize) -> Result<H1Presentation> {
    let group = h.as_local()?.clone();
    let tower = h.tower(depth)?;
    Ok(H1Presentation { group, tower })
}

impl H1Presentation {
    /// At each level, every basis vector `v` of `H_n` is hit by the cocycle
    /// built from it (`α` and `τ¹` both return `v`), and pulling that cocycle
    /// back to level `n + 1` keeps its `α`-image, so the level isomorphisms
    /// commute with the inclusions `H_n ⊆ H_{n+1}`.
    pub fn verify_levels(&self) -> Result<bool> {
        let odo = OdometerTower::new(self.tower.clone())?;
        for n in 1..=odo.depth() {
            let f = odo.level(n);
            for v in self.tower.level(n).basis().columns() {
                let theta = build_cocycle(f.lattice(), &v, None)?;
                if alpha_map(&theta) != v || theta.tau1() != v {
                    return Ok(false);
                }
                if n < odo.depth() && alpha_map(&theta.pullback(odo.level(n + 1))?) != v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A class in `D(Z^d / G) = C(Z^d/G, Z) / B` with its trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantClass {
    pub f: Vec<i64>,
    pub value: Rat,
}

impl CoinvariantClass {
    pub fn new(quotient: &FiniteOdometer, f: Vec<i64>) -> Self {
        let sum: i64 = f.iter().sum();
        let value = Rat::new(sum.into(), quotient.card().into());
        CoinvariantClass { f, value }
    }
}

/// Outcome of the finite-level computation of co-invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCoinvariants {
    pub card: usize,
    /// Invariant factors of the relation lattice `span{δ_x - δ_{x+e_i}}`.
    pub relation_factors: Vec<Int>,
    /// `τ([δ_0]) = 1 / card`.
    pub generator_trace: Rat,
}

impl LevelCoinvariants {
    /// The quotient is infinite cyclic, generated by `[δ_0]`, and `τ` maps it
    /// onto `card^{-1} Z`.
    pub fn is_cyclic_with_trace(&self) -> bool {
        self.relation_factors.len() + 1 == self.card
            && self.relation_factors.iter().all(One::is_one)
            && self.generator_trace == Rat::new(Int::one(), self.card.into())
    }
}

/// `C(Z^d/G, Z)` modulo coboundary relations, via the Smith form of the
/// relation matrix.
pub fn level_coinvariants(quotient: &FiniteOdometer) -> LevelCoinvariants {
    let card = quotient.card();
    let d = quotient.dim();
    let mut rel = IntMat::zeros(card, d * card);
    for (x, rep) in quotient.reps().enumerate() {
        for i in 0..d {
            let e: Vec<i64> = (0..d).map(|j| (i == j) as i64).collect();
            let y = quotient.index_of(&quotient.act(&e, &rep));
            let col = i * card + x;
            rel[(x, col)] += Int::one();
            rel[(y, col)] -= Int::one();
        }
    }
    let relation_factors = smith_form(&rel).invariant_factors();
    let mut delta = vec![0; card];
    delta[0] = 1;
    let generator_trace = CoinvariantClass::new(quotient, delta).value;
    LevelCoinvariants {
        card,
        relation_factors,
        generator_trace,
    }
}

/// Largest quotient for which [`coinvariants`] runs the Smith-form check.
pub const COINVARIANT_CARD_CAP: usize = 150;

/// The co-invariants `D(Y_H) = ∪_n card_n^{-1} Z`, encoded by the
/// supernatural number `lcm_n card_n`, where `card_n = [Z^d : G_n]`.
///
/// The levels of the factorial tower up to `depth` with at most
/// [`COINVARIANT_CARD_CAP`] cosets are checked to satisfy
/// `D(Z^d / G_n) ≅ card_n^{-1} Z` through the trace. The limit is read off
/// the chain `H ∩ s^{-k} Z^d` (`s` the product of the support primes): past
/// `k = K` the `p`-part of the index is either constant or grows with `k`,
/// and comparing `k = K` with `k = K + 1` tells the two apart.
pub fn coinvariants(h: &HGroupPresentation, depth: usize) -> Result<Supernatural> {
    let local = h.as_local()?;
    let odo = OdometerTower::new(h.tower(depth)?)?;
    for n in 1..=odo.depth() {
        let f = odo.level(n);
        if f.card() <= COINVARIANT_CARD_CAP && !level_coinvariants(f).is_cyclic_with_trace() {
            return Err(Error::InvalidArgument(format!(
                "co-invariants at level {n} are not infinite cyclic"
            )));
        }
    }
    let s: Int = local.support().iter().map(|&p| Int::from(p)).product();
    let k = 1 + local
        .entries()
        .map(|e| e.torsion_valuation())
        .max()
        .unwrap_or(0);
    let card = |k: u32| {
        let g = local.truncation_dual(&s.pow(k));
        index(&g, &Lattice::standard(local.dim()))
            .expect("truncation dual lies in Z^d")
            .to_integer()
    };
    let (before, after) = (card(k), card(k + 1));
    let mut value = Supernatural::one();
    for p in local.support() {
        let (a, b) = (valuation_int(&before, p), valuation_int(&after, p));
        value.set(
            p,
            if b > a {
                Exponent::Infinite
            } else {
                Exponent::Finite(a)
            },
        );
    }
    Ok(value)
}

fn random_function(card: usize, rng: &mut impl Rng) -> Vec<i64> {
    (0..card).map(|_| rng.gen_range(-20..=20)).collect()
}

/// Searches for torsion in `H^1(Z^d / G)`: a cocycle `θ` that is not a
/// coboundary while `nθ` is, for `2 ≤ n ≤ 5`. Returns `true` when none is
/// found in `trials` attempts.
///
/// Half of the trials draw `θ = Σ c_i ε_i + d(g)` with random integers, the
/// rest draw classes with trivial trace, `θ = d(g) + Σ c_i ε_i - θ_c` where
/// `θ_c` is the cocycle built from `c ∈ Z^d ⊆ G*` (`d ≤ 2`), so that
/// `nθ` is a coboundary by construction.
pub fn torsion_free_check(
    quotient: &FiniteOdometer,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool> {
    let d = quotient.dim();
    for t in 0..trials {
        let g = random_function(quotient.card(), rng);
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let mut theta = Cocycle1::coboundary(quotient, &g);
        for (i, &ci) in c.iter().enumerate() {
            theta = theta.add(&Cocycle1::epsilon(quotient, i).scale(ci));
        }
        if t % 2 == 1 && d <= 2 {
            let h: Vec<Rat> = c.iter().map(|&x| Rat::from_integer(x.into())).collect();
            theta = theta.sub(&build_cocycle(quotient.lattice(), &h, None)?);
        }
        let theta_cob = theta.is_coboundary();
        for n in 2..=5 {
            if theta.scale(n).is_coboundary() && !theta_cob {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgroup::inverted;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coinvariants_match_superindex() {
        let h: HGroupPresentation = LocalPresentation::oplus(&[inverted(2)]).into();
        assert_eq!(coinvariants(&h, 5).unwrap().to_string(), "2^inf");
        let z: HGroupPresentation = LocalPresentation::standard(2).into();
        assert!(coinvariants(&z, 3).unwrap().is_one());
        let a: HGroupPresentation = LocalPresentation::oplus(&[inverted(2), inverted(15)]).into();
        let b: HGroupPresentation = LocalPresentation::oplus(&[inverted(10), inverted(3)]).into();
        assert_eq!(coinvariants(&a, 4).unwrap(), coinvariants(&b, 4).unwrap());
    }

    #[test]
    fn level_quotient_is_cyclic() {
        let g = Lattice::from_int(&IntMat::from_i64(&[&[2, 0], &[1, 3]])).unwrap();
        let lc = level_coinvariants(&FiniteOdometer::new(&g).unwrap());
        assert!(lc.is_cyclic_with_trace());
        assert_eq!(lc.generator_trace, Rat::new(1.into(), 6.into()));
    }

    #[test]
    fn no_torsion() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Lattice::from_int(&IntMat::from_i64(&[&[4, 0], &[1, 3]])).unwrap();
        assert!(torsion_free_check(&FiniteOdometer::new(&g).unwrap(), 40, &mut rng).unwrap());
    }

    #[test]
    fn h1_levels() {
        let h: HGroupPresentation = LocalPresentation::oplus(&[inverted(2), inverted(3)]).into();
        let p = h1_presentation(&h, 4).unwrap();
        assert_eq!(&p.group, h.as_local().unwrap());
        assert!(p.verify_levels().unwrap());
    }
}
