use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use super::Cocycle1;
use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{dot, to_rat_vec, Lattice, RatMat};
use crate::odometer::{Coset, FiniteOdometer};

/// Generators `(a, b)`, `(c, d)` of `G ⊆ Z^2` with `a, d > 0`, `b, c ≥ 0`
/// and `ad - bc > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorPair {
    pub first: [i64; 2],
    pub second: [i64; 2],
}

impl GeneratorPair {
    /// The Hermite basis columns `(h11, h21)` and `(0, h22)`.
    pub fn from_hermite(g: &Lattice) -> Result<Self> {
        let basis = g
            .integer_basis()
            .ok_or_else(|| Error::BadGenerators("G is not inside Z^2".into()))?;
        if g.dim() != 2 {
            return Err(Error::UnsupportedDimension(g.dim()));
        }
        let e = |i, j| basis[(i, j)].to_i64().expect("small entries");
        Ok(GeneratorPair {
            first: [e(0, 0), e(1, 0)],
            second: [e(0, 1), e(1, 1)],
        })
    }

    fn validate(&self, g: &Lattice) -> Result<()> {
        let [a, b] = self.first;
        let [c, d] = self.second;
        if a <= 0 || d <= 0 || b < 0 || c < 0 || a * d - b * c <= 0 {
            return Err(Error::BadGenerators(format!(
                "({a},{b}),({c},{d}) violates a,d > 0, b,c >= 0, ad-bc > 0"
            )));
        }
        let spanned = Lattice::from_int(&crate::linalg::IntMat::from_i64(&[&[a, c], &[b, d]]))?;
        if spanned != *g {
            return Err(Error::BadGenerators(format!(
                "({a},{b}),({c},{d}) does not generate G"
            )));
        }
        Ok(())
    }

    /// `F = { s(a,b) + t(c,d) : 0 ≤ s, t < 1 } ∩ Z^2`.
    pub fn fundamental_domain(&self) -> Vec<[i64; 2]> {
        let [a, b] = self.first;
        let [c, d] = self.second;
        let m = RatMat::from_i64(&[&[a, c], &[b, d]])
            .inverse()
            .expect("ad - bc > 0");
        let one = Rat::from_integer(1.into());
        let mut out = Vec::new();
        for x in 0..a + c {
            for y in 0..b + d {
                let st = m.mul_vec(&to_rat_vec(&[x.into(), y.into()]));
                if st.iter().all(|v| *v >= Rat::zero() && *v < one) {
                    out.push([x, y]);
                }
            }
        }
        out
    }
}

/// The cocycle `θ(x, n) = <x_F + n - rep_F(x_F + n), h>`, where `x_F` is the
/// representative of `x` in the fundamental domain `F`. Defined for `d = 1`
/// (with `F = {0, …, m-1}`) and `d = 2`.
pub fn build_cocycle(g: &Lattice, h: &[Rat], pair: Option<GeneratorPair>) -> Result<Cocycle1> {
    let d = g.dim();
    if h.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: h.len(),
        });
    }
    let quotient = FiniteOdometer::new(g)?;
    if !g.dual().contains(h) {
        return Err(Error::InvalidArgument(
            "h is not in the dual lattice of G".into(),
        ));
    }
    let domain: Vec<Coset> = match d {
        1 => (0..quotient.card() as i64).map(|x| vec![x]).collect(),
        2 => {
            let pair = match pair {
                Some(p) => p,
                None => GeneratorPair::from_hermite(g)?,
            };
            pair.validate(g)?;
            let f: Vec<Coset> = pair
                .fundamental_domain()
                .iter()
                .map(|p| p.to_vec())
                .collect();
            if f.len() != quotient.card() {
                return Err(Error::BadGenerators(
                    "fundamental domain has the wrong size".into(),
                ));
            }
            f
        }
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    let to_domain: HashMap<Coset, Coset> = domain
        .iter()
        .map(|k| (quotient.reduce(k), k.clone()))
        .collect();
    if to_domain.len() != quotient.card() {
        return Err(Error::BadGenerators(
            "fundamental domain repeats a coset".into(),
        ));
    }
    let values = (0..d)
        .map(|i| {
            quotient
                .reps()
                .map(|x| {
                    let xf = &to_domain[&x];
                    let mut moved = xf.clone();
                    moved[i] += 1;
                    let back = &to_domain[&quotient.reduce(&moved)];
                    let g_vec: Vec<Rat> = moved
                        .iter()
                        .zip(back)
                        .map(|(a, b)| Rat::from_integer((a - b).into()))
                        .collect();
                    dot(&g_vec, h)
                        .to_integer()
                        .to_i64()
                        .expect("small cocycle value")
                })
                .collect()
        })
        .collect();
    Cocycle1::new(quotient, values)
}

/// The `h ∈ G*` with `θ(0 + G, g) = <g, h>` for `g ∈ G`.
pub fn alpha_map(theta: &Cocycle1) -> Vec<Rat> {
    let f = theta.quotient();
    let b = f.lattice().basis();
    let zero = vec![0i64; f.dim()];
    let values: Vec<Rat> = b
        .columns()
        .iter()
        .map(|g| {
            let g: Vec<i64> = g
                .iter()
                .map(|x| x.to_integer().to_i64().expect("small"))
                .collect();
            Rat::from_integer(theta.eval(&zero, &g).into())
        })
        .collect();
    b.transpose().solve(&values).expect("basis is nonsingular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::linalg::IntMat;

    fn lattice(rows: &[&[i64]]) -> Lattice {
        Lattice::from_int(&IntMat::from_i64(rows)).unwrap()
    }

    #[test]
    fn parallelogram_domain() {
        let g = lattice(&[&[2, 0], &[1, 3]]);
        let pair = GeneratorPair::from_hermite(&g).unwrap();
        assert_eq!(
            pair,
            GeneratorPair {
                first: [2, 1],
                second: [0, 3]
            }
        );
        assert_eq!(
            pair.fundamental_domain(),
            vec![[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [1, 3]]
        );
    }

    #[test]
    fn trace_and_alpha() {
        let g = lattice(&[&[2, 0], &[1, 3]]);
        let h = vec![rat(1, 2), rat(0, 1)];
        let theta = build_cocycle(&g, &h, None).unwrap();
        assert_eq!(theta.tau1(), h);
        assert_eq!(alpha_map(&theta), h);

        let z2 = Lattice::standard(2);
        let theta = build_cocycle(&z2, &[rat(1, 1), rat(1, 1)], None).unwrap();
        assert_eq!(theta.eval(&[0, 0], &[3, -5]), -2);

        let g = lattice(&[&[2, 0], &[0, 3]]);
        let h = vec![rat(1, 2), rat(0, 1)];
        let theta = build_cocycle(&g, &h, None).unwrap();
        assert_eq!(theta.tau1(), h);
    }

    #[test]
    fn other_generator_pairs() {
        let g = lattice(&[&[2, 0], &[1, 3]]);
        // (2,1),(2,4) also generates G: (2,4) = (2,1) + (0,3).
        let pair = GeneratorPair {
            first: [2, 1],
            second: [2, 4],
        };
        let h = vec![rat(1, 3), rat(1, 3)];
        let theta = build_cocycle(&g, &h, Some(pair)).unwrap();
        assert_eq!(theta.tau1(), h);
        assert_eq!(alpha_map(&theta), h);
        assert!(build_cocycle(&g, &[rat(1, 2), rat(1, 3)], Some(pair)).is_err());
        let bad = GeneratorPair {
            first: [2, 1],
            second: [0, 6],
        };
        assert!(matches!(
            build_cocycle(&g, &h, Some(bad)),
            Err(Error::BadGenerators(_))
        ));
    }

    #[test]
    fn one_dimensional() {
        let g = Lattice::from_int(&IntMat::from_i64(&[&[4]])).unwrap();
        let theta = build_cocycle(&g, &[rat(3, 4)], None).unwrap();
        assert_eq!(theta.tau1(), vec![rat(3, 4)]);
        assert_eq!(alpha_map(&theta), vec![rat(3, 4)]);
    }
}
