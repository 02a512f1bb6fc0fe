use std::fmt;

use num_integer::Integer;

use crate::arith::{frac, Rat};
use crate::error::Result;
use crate::hgroup::LocalPresentation;
use crate::linalg::fmt_rat_vec;

/// The eigenvalue `(e^{2πi h_1}, …, e^{2πi h_d})`, stored as `h mod Z^d`
/// with every coordinate in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eigenvalue {
    h: Vec<Rat>,
}

impl Eigenvalue {
    pub fn new(h: &[Rat]) -> Self {
        Eigenvalue {
            h: h.iter().map(frac).collect(),
        }
    }

    pub fn h(&self) -> &[Rat] {
        &self.h
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat_vec(&self.h))
    }
}

/// Elements of `H / Z^d` whose coordinates have denominators at most
/// `height`, sorted lexicographically.
pub fn spectrum(h: &LocalPresentation, height: u64) -> Result<Vec<Eigenvalue>> {
    let height = height.max(1);
    let mut coords: Vec<Rat> = Vec::new();
    for q in 1..=height {
        for a in 0..q {
            if a.gcd(&q) == 1 {
                coords.push(Rat::new((a as i64).into(), (q as i64).into()));
            }
        }
    }
    let d = h.dim();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let v: Vec<Rat> = idx.iter().map(|&i| coords[i].clone()).collect();
        if h.contains(&v) {
            out.push(Eigenvalue::new(&v));
        }
        let mut k = d;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < coords.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgroup::inverted;

    fn show(s: &[Eigenvalue]) -> Vec<String> {
        s.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn dyadic_spectrum() {
        let h = LocalPresentation::oplus(&[inverted(2)]);
        assert_eq!(
            show(&spectrum(&h, 4).unwrap()),
            ["(0)", "(1/4)", "(1/2)", "(3/4)"]
        );
        assert_eq!(
            show(&spectrum(&LocalPresentation::standard(2), 5).unwrap()),
            ["(0, 0)"]
        );
    }

    #[test]
    fn product_spectrum() {
        let h = LocalPresentation::oplus(&[inverted(2), inverted(3)]);
        assert_eq!(
            show(&spectrum(&h, 3).unwrap()),
            [
                "(0, 0)",
                "(0, 1/3)",
                "(0, 2/3)",
                "(1/2, 0)",
                "(1/2, 1/3)",
                "(1/2, 2/3)"
            ]
        );
    }
}
