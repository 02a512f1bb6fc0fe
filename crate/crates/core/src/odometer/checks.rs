//! Finite verifications of the structural statements about odometers:
//! duality between `Y_K` and `Z^d / K*`, products, and factor maps.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::{Coset, FiniteOdometer, OdometerTower};
use crate::arith::{frac, Rat};
use crate::error::{Error, Result};
use crate::hgroup::{HGroupPresentation, LocalPresentation};
use crate::linalg::{dot, smith_form, Lattice, RatMat};

/// The character group `Y_K` of `K / Z^d`, realized through the Smith form
/// of the inclusion `Z^d → K`.
///
/// With `c_1, …, c_d` the adapted basis of `K` and `s_1 | … | s_d` the
/// invariant factors, `K / Z^d = ⊕ Z/s_i` and a character is the tuple
/// `(t_i mod s_i)` sending `c_i` to `t_i / s_i mod 1`.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    /// Adapted basis of `K`, as columns.
    basis: RatMat,
    inverse: RatMat,
    factors: Vec<i64>,
}

impl CharacterGroup {
    pub fn new(k: &Lattice) -> Result<Self> {
        if !Lattice::standard(k.dim()).is_sublattice_of(k) {
            return Err(Error::MissingStandardLattice);
        }
        let b = k.basis();
        let inclusion = b
            .inverse()?
            .to_int()
            .expect("Z^d ⊆ K makes B^{-1} integral");
        let sf = smith_form(&inclusion);
        // u · B^{-1} · v = s, so the columns of B·u^{-1} are adapted to Z^d.
        let basis = b.mul(&sf.u.to_rat().inverse()?);
        let factors = (0..k.dim())
            .map(|i| sf.s[(i, i)].to_i64().expect("small index"))
            .collect();
        let inverse = basis.inverse()?;
        Ok(CharacterGroup {
            basis,
            inverse,
            factors,
        })
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    /// `#Y_K = [K : Z^d]`.
    pub fn order(&self) -> usize {
        self.factors.iter().map(|&s| s as usize).product()
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &s in &self.factors {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..s).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// `χ(k) ∈ Q/Z` for `k ∈ K`.
    pub fn evaluate(&self, chi: &[i64], k: &[Rat]) -> Rat {
        let coords = self.inverse.mul_vec(k);
        let v = coords
            .iter()
            .zip(chi.iter().zip(&self.factors))
            .fold(Rat::zero(), |acc, (a, (&t, &s))| {
                acc + a * Rat::new(t.into(), s.into())
            });
        frac(&v)
    }

    /// The character with the given values on the adapted basis.
    fn coords_of(&self, values: &[Rat]) -> Vec<i64> {
        values
            .iter()
            .zip(&self.factors)
            .map(|(v, &s)| {
                let t = frac(v) * Rat::from_integer(s.into());
                debug_assert!(t.is_integer());
                t.to_integer().to_i64().expect("small")
            })
            .collect()
    }

    /// `ρ̂(n) = <·, n>`.
    pub fn rho_hat(&self, n: &[i64]) -> Vec<i64> {
        let n: Vec<Rat> = n.iter().map(|&x| Rat::from_integer(x.into())).collect();
        let values: Vec<Rat> = self.basis.columns().iter().map(|c| dot(c, &n)).collect();
        self.coords_of(&values)
    }

    /// `ψ_K^n(χ) = χ + ρ̂(n)`.
    pub fn psi(&self, n: &[i64], chi: &[i64]) -> Vec<i64> {
        self.rho_hat(n)
            .iter()
            .zip(chi)
            .zip(&self.factors)
            .map(|((a, b), s)| (a + b).rem_euclid(*s))
            .collect()
    }

    /// Restriction `Y_K → Y_{K'}` along an inclusion `K' ⊆ K`.
    pub fn restrict(&self, chi: &[i64], to: &CharacterGroup) -> Vec<i64> {
        let values: Vec<Rat> = to
            .basis
            .columns()
            .iter()
            .map(|c| self.evaluate(chi, c))
            .collect();
        to.coords_of(&values)
    }
}

/// `h_K : Y_K → Z^d / K*`, the inverse of `n + K* ↦ ρ̂(n)`.
fn conjugacy(y: &CharacterGroup, x: &FiniteOdometer) -> Option<HashMap<Vec<i64>, Coset>> {
    let mut map = HashMap::new();
    for r in x.reps() {
        if map.insert(y.rho_hat(&r), r).is_some() {
            return None;
        }
    }
    (map.len() == y.order()).then_some(map)
}

fn random_vector(d: usize, rng: &mut impl Rng) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(-50..=50)).collect()
}

/// Realizes `h_K` and checks that it is a bijection intertwining `ψ_K^n`
/// with translation by `n` on `Z^d / K*`, for `samples` random `n` and
/// every point.
pub fn duality_check(k: &Lattice, samples: usize, rng: &mut impl Rng) -> Result<bool> {
    let y = CharacterGroup::new(k)?;
    let x = FiniteOdometer::new(&k.dual())?;
    if y.order() != x.card() {
        return Ok(false);
    }
    let Some(h) = conjugacy(&y, &x) else {
        return Ok(false);
    };
    let d = k.dim();
    let mut shifts: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| (i == j) as i64).collect())
        .collect();
    shifts.extend((0..samples).map(|_| random_vector(d, rng)));
    for n in &shifts {
        for chi in y.elements() {
            if h[&y.psi(n, &chi)] != x.act(n, &h[&chi]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For `K_1 ⊆ K_2`, checks `h_{K_1} ∘ î = q ∘ h_{K_2}` on all of `Y_{K_2}`.
pub fn commuting_square_check(k1: &Lattice, k2: &Lattice) -> Result<bool> {
    if !k1.is_sublattice_of(k2) {
        return Err(Error::NotSublattice);
    }
    let (y1, y2) = (CharacterGroup::new(k1)?, CharacterGroup::new(k2)?);
    let (x1, x2) = (
        FiniteOdometer::new(&k1.dual())?,
        FiniteOdometer::new(&k2.dual())?,
    );
    let (Some(h1), Some(h2)) = (conjugacy(&y1, &x1), conjugacy(&y2, &x2)) else {
        return Ok(false);
    };
    Ok(y2
        .elements()
        .iter()
        .all(|chi| h1[&y2.restrict(chi, &y1)] == x1.reduce(&h2[chi])))
}

fn unit_vectors(d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|i| (0..d).map(|j| (i == j) as i64).collect())
        .collect()
}

/// Level by level, `Z^{d1+d2} / G_n(H_1 ⊕ H_2)` is equivariantly the product
/// of the factors' quotients.
pub fn product_check(h1: &LocalPresentation, h2: &LocalPresentation, depth: usize) -> Result<bool> {
    let sum: HGroupPresentation = h1.direct_sum(h2).into();
    let t = OdometerTower::new(sum.tower(depth)?)?;
    let t1 = OdometerTower::new(HGroupPresentation::from(h1.clone()).tower(depth)?)?;
    let t2 = OdometerTower::new(HGroupPresentation::from(h2.clone()).tower(depth)?)?;
    let (d1, d2) = (h1.dim(), h2.dim());
    let d = d1 + d2;
    for n in 1..=depth {
        let (f, f1, f2) = (t.level(n), t1.level(n), t2.level(n));
        let block = f1.lattice().direct_sum(f2.lattice());
        if *f.lattice() != block || f.card() != f1.card() * f2.card() {
            return Ok(false);
        }
        let pair = |a: &[i64], b: &[i64]| f.reduce(&[a, b].concat());
        let mut seen = vec![false; f.card()];
        for a in f1.reps() {
            for b in f2.reps() {
                let img = pair(&a, &b);
                let i = f.index_of(&img);
                if std::mem::replace(&mut seen[i], true) {
                    return Ok(false);
                }
                for e in unit_vectors(d) {
                    let (e1, e2) = e.split_at(d1);
                    let moved = pair(&f1.act(e1, &a), &f2.act(e2, &b));
                    if moved != f.act(&e, &img) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// For `H ⊆ H'`, the natural maps `Z^d / G'_n → Z^d / G_n` exist (that is,
/// `G'_n ⊆ G_n`), are surjective and commute with the actions.
pub fn factor_map_check(
    h: &LocalPresentation,
    h_big: &LocalPresentation,
    depth: usize,
) -> Result<bool> {
    if h.dim() != h_big.dim() || !h.is_subgroup_of(h_big) {
        return Err(Error::NotSubgroup);
    }
    let t = OdometerTower::new(HGroupPresentation::from(h.clone()).tower(depth)?)?;
    let tb = OdometerTower::new(HGroupPresentation::from(h_big.clone()).tower(depth)?)?;
    for n in 1..=depth {
        let (f, fb) = (t.level(n), tb.level(n));
        if !fb.lattice().is_sublattice_of(f.lattice()) {
            return Ok(false);
        }
        let mut hit = vec![false; f.card()];
        for x in fb.reps() {
            let y = f.reduce(&x);
            hit[f.index_of(&y)] = true;
            for e in unit_vectors(h.dim()) {
                if f.reduce(&fb.act(&e, &x)) != f.act(&e, &y) {
                    return Ok(false);
                }
            }
        }
        if hit.contains(&false) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::hgroup::inverted;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(xs: &[Rat]) -> Lattice {
        Lattice::new(&RatMat::diagonal(xs)).unwrap()
    }

    #[test]
    fn duality_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k = diag(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(CharacterGroup::new(&k).unwrap().order(), 6);
        assert!(duality_check(&k, 20, &mut rng).unwrap());
        assert!(duality_check(&Lattice::standard(2), 5, &mut rng).unwrap());
        let k1 = diag(&[rat(1, 2), rat(1, 1)]);
        assert!(commuting_square_check(&k1, &k).unwrap());
        assert!(commuting_square_check(&Lattice::standard(2), &k1).unwrap());
        assert!(commuting_square_check(&k, &k1).is_err());
    }

    #[test]
    fn products_and_factors() {
        let z2 = LocalPresentation::oplus(&[inverted(2)]);
        let z3 = LocalPresentation::oplus(&[inverted(3)]);
        let z = LocalPresentation::standard(1);
        assert!(product_check(&z2, &z3, 3).unwrap());
        assert!(product_check(&z, &z, 3).unwrap());
        assert!(product_check(&z2, &z2, 3).unwrap());
        let z6 = LocalPresentation::oplus(&[inverted(6)]);
        assert!(factor_map_check(&z2, &z6, 4).unwrap());
        assert!(factor_map_check(&z, &z2, 3).unwrap());
        assert!(matches!(
            factor_map_check(&z6, &z2, 3),
            Err(Error::NotSubgroup)
        ));
    }
}
