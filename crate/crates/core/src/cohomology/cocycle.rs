use std::collections::VecDeque;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::odometer::FiniteOdometer;

/// An integer 1-cocycle on `Z^d / G`, stored by its values `θ(x, e_i)` on
/// the generators. `values[i][j]` is `θ(rep_j, e_i)` where `rep_j` is the
/// `j`-th box representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle1 {
    quotient: FiniteOdometer,
    values: Vec<Vec<i64>>,
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    (0..d).map(|j| (i == j) as i64).collect()
}

impl Cocycle1 {
    /// Checks `θ(x,e_i) + θ(x+e_i, e_j) = θ(x,e_j) + θ(x+e_j, e_i)`.
    pub fn new(quotient: FiniteOdometer, values: Vec<Vec<i64>>) -> Result<Self> {
        let d = quotient.dim();
        if values.len() != d || values.iter().any(|v| v.len() != quotient.card()) {
            return Err(Error::InvalidArgument(
                "cocycle table has the wrong shape".into(),
            ));
        }
        let c = Cocycle1 { quotient, values };
        if !c.is_closed() {
            return Err(Error::InvalidArgument(
                "values do not define a cocycle".into(),
            ));
        }
        Ok(c)
    }

    fn is_closed(&self) -> bool {
        let d = self.dim();
        let f = &self.quotient;
        f.reps().enumerate().all(|(x, rep)| {
            (0..d).all(|i| {
                (i + 1..d).all(|j| {
                    let xi = f.index_of(&f.act(&unit(d, i), &rep));
                    let xj = f.index_of(&f.act(&unit(d, j), &rep));
                    self.values[i][x] + self.values[j][xi] == self.values[j][x] + self.values[i][xj]
                })
            })
        })
    }

    /// The constant cocycle `ε_i(x, n) = n_i`.
    pub fn epsilon(quotient: &FiniteOdometer, i: usize) -> Self {
        let d = quotient.dim();
        let values = (0..d)
            .map(|j| vec![(i == j) as i64; quotient.card()])
            .collect();
        Cocycle1 {
            quotient: quotient.clone(),
            values,
        }
    }

    /// `d(f)(x, n) = f(x + n) - f(x)`.
    pub fn coboundary(quotient: &FiniteOdometer, f: &[i64]) -> Self {
        assert_eq!(f.len(), quotient.card(), "function size");
        let d = quotient.dim();
        let values = (0..d)
            .map(|i| {
                quotient
                    .reps()
                    .enumerate()
                    .map(|(x, rep)| f[quotient.index_of(&quotient.act(&unit(d, i), &rep))] - f[x])
                    .collect()
            })
            .collect();
        Cocycle1 {
            quotient: quotient.clone(),
            values,
        }
    }

    pub fn quotient(&self) -> &FiniteOdometer {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// `θ(x, e_i)` for every box representative `x`.
    pub fn generator_values(&self, i: usize) -> &[i64] {
        &self.values[i]
    }

    /// `θ(x, n)`, walking from `x` along unit steps.
    pub fn eval(&self, x: &[i64], n: &[i64]) -> i64 {
        let f = &self.quotient;
        let d = self.dim();
        let mut pos = f.reduce(x);
        let mut total = 0;
        for (i, &ni) in n.iter().enumerate().take(d) {
            let step = unit(d, i);
            let back: Vec<i64> = step.iter().map(|s| -s).collect();
            for _ in 0..ni.abs() {
                if ni > 0 {
                    total += self.values[i][f.index_of(&pos)];
                    pos = f.act(&step, &pos);
                } else {
                    pos = f.act(&back, &pos);
                    total -= self.values[i][f.index_of(&pos)];
                }
            }
        }
        total
    }

    fn zip_with(&self, other: &Cocycle1, op: impl Fn(i64, i64) -> i64) -> Cocycle1 {
        assert_eq!(
            self.quotient, other.quotient,
            "cocycles on different quotients"
        );
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect())
            .collect();
        Cocycle1 {
            quotient: self.quotient.clone(),
            values,
        }
    }

    pub fn add(&self, other: &Cocycle1) -> Cocycle1 {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cocycle1) -> Cocycle1 {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: i64) -> Cocycle1 {
        self.zip_with(self, |a, _| k * a)
    }

    /// The same cocycle viewed on a finer quotient `Z^d / G'` with `G' ⊆ G`.
    pub fn pullback(&self, finer: &FiniteOdometer) -> Result<Cocycle1> {
        if !finer.lattice().is_sublattice_of(self.quotient.lattice()) {
            return Err(Error::NotSublattice);
        }
        let f = &self.quotient;
        let values = self
            .values
            .iter()
            .map(|v| finer.reps().map(|x| v[f.index_of(&f.reduce(&x))]).collect())
            .collect();
        Ok(Cocycle1 {
            quotient: finer.clone(),
            values,
        })
    }

    /// `τ¹(θ)_i`: the average of `θ(x, e_i)` under the counting measure.
    pub fn tau1(&self) -> Vec<Rat> {
        let card = Rat::from_integer(self.quotient.card().into());
        self.values
            .iter()
            .map(|v| Rat::from_integer(v.iter().sum::<i64>().into()) / &card)
            .collect()
    }

    /// An integer `f` with `d(f) = θ` and `f(0) = 0`, if one exists.
    ///
    /// The Cayley graph of the quotient is connected, so `f` is forced along
    /// a spanning tree; the remaining edges decide solvability.
    pub fn solve_coboundary(&self) -> Option<Vec<i64>> {
        let f = &self.quotient;
        let d = self.dim();
        let mut sol: Vec<Option<i64>> = vec![None; f.card()];
        sol[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let rep = f.rep(x);
            let fx = sol[x].expect("visited");
            for i in 0..d {
                let fwd = f.index_of(&f.act(&unit(d, i), &rep));
                if sol[fwd].is_none() {
                    sol[fwd] = Some(fx + self.values[i][x]);
                    queue.push_back(fwd);
                }
                let back_rep = f.act(&unit(d, i).iter().map(|s| -s).collect::<Vec<_>>(), &rep);
                let back = f.index_of(&back_rep);
                if sol[back].is_none() {
                    sol[back] = Some(fx - self.values[i][back]);
                    queue.push_back(back);
                }
            }
        }
        let sol: Vec<i64> = sol.into_iter().map(|v| v.expect("connected")).collect();
        (Cocycle1::coboundary(f, &sol) == *self).then_some(sol)
    }

    pub fn is_coboundary(&self) -> bool {
        self.solve_coboundary().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::linalg::{IntMat, Lattice};

    fn quotient(rows: &[&[i64]]) -> FiniteOdometer {
        FiniteOdometer::new(&Lattice::from_int(&IntMat::from_i64(rows)).unwrap()).unwrap()
    }

    #[test]
    fn epsilon_and_coboundaries() {
        let f = quotient(&[&[2, 0], &[1, 3]]);
        let e1 = Cocycle1::epsilon(&f, 0);
        assert_eq!(e1.eval(&[1, 2], &[5, -7]), 5);
        assert_eq!(e1.tau1(), vec![rat(1, 1), rat(0, 1)]);
        let g: Vec<i64> = (0..6).map(|i| i * i - 3).collect();
        let b = Cocycle1::coboundary(&f, &g);
        let (x, n) = ([1, 1], [3, -2]);
        let target = f.act(&n, &x);
        assert_eq!(b.eval(&x, &n), g[f.index_of(&target)] - g[f.index_of(&x)]);
        assert_eq!(b.tau1(), vec![rat(0, 1), rat(0, 1)]);
        let sol = b.solve_coboundary().unwrap();
        assert_eq!(Cocycle1::coboundary(&f, &sol), b);
        assert!(!e1.is_coboundary());
        assert!(Cocycle1::new(f.clone(), vec![vec![1, 0, 0, 0, 0, 0], vec![0; 6]]).is_err());
    }
}
