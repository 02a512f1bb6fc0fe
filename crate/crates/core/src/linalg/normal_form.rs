//! Hermite and Smith normal forms over the integers.
//!
//! The Hermite form is the column-style, lower-triangular convention used
//! throughout the crate: the pivot of each nonzero column is positive, every
//! entry to the left of a pivot lies in `[0, pivot)`, and entries above a
//! pivot are zero.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMat;
use crate::arith::Int;
use crate::error::{Error, Result};

/// Column Hermite form with the unimodular transform.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    /// `a · transform = form`; the first `rank` columns are nonzero.
    pub form: IntMat,
    pub transform: IntMat,
    pub rank: usize,
    /// Pivot row of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    /// The nonzero columns of the form.
    pub fn basis(&self) -> IntMat {
        self.form.select_cols(0..self.rank)
    }

    /// Basis of the integer kernel `{x ∈ Z^m : a·x = 0}`.
    pub fn kernel(&self) -> IntMat {
        self.transform.select_cols(self.rank..self.transform.cols())
    }
}

fn col_axpy(m: &mut IntMat, dst: usize, src: usize, factor: &Int) {
    if factor.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let t = &m[(i, src)] * factor;
        m[(i, dst)] += t;
    }
}

fn negate_col(m: &mut IntMat, c: usize) {
    for i in 0..m.rows() {
        m[(i, c)] = -m[(i, c)].clone();
    }
}

/// Replaces columns `(c, j)` by `(x·c + y·j, -(b/g)·c + (a/g)·j)`; the
/// 2×2 transform has determinant 1.
fn combine_cols(m: &mut IntMat, c: usize, j: usize, x: &Int, y: &Int, bg: &Int, ag: &Int) {
    for i in 0..m.rows() {
        let vc = m[(i, c)].clone();
        let vj = m[(i, j)].clone();
        m[(i, c)] = x * &vc + y * &vj;
        m[(i, j)] = ag * &vj - bg * &vc;
    }
}

/// Column Hermite form of an arbitrary integer matrix.
pub fn hermite_form(a: &IntMat) -> HermiteForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMat::identity(cols);
    let mut c = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..rows {
        if c == cols {
            break;
        }
        for j in c + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, c)].is_zero() {
                h.swap_cols(c, j);
                u.swap_cols(c, j);
                continue;
            }
            let av = h[(i, c)].clone();
            let bv = h[(i, j)].clone();
            let eg = av.extended_gcd(&bv);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &av / &g;
            let bg = &bv / &g;
            combine_cols(&mut h, c, j, &x, &y, &bg, &ag);
            combine_cols(&mut u, c, j, &x, &y, &bg, &ag);
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            negate_col(&mut h, c);
            negate_col(&mut u, c);
        }
        let piv = h[(i, c)].clone();
        for j in 0..c {
            let q = h[(i, j)].div_floor(&piv);
            let nq = -q;
            col_axpy(&mut h, j, c, &nq);
            col_axpy(&mut u, j, c, &nq);
        }
        pivot_rows.push(i);
        c += 1;
    }
    HermiteForm {
        form: h,
        transform: u,
        rank: c,
        pivot_rows,
    }
}

/// Lower-triangular column Hermite normal form of a nonsingular square matrix.
pub fn hnf(m: &IntMat) -> Result<IntMat> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let hf = hermite_form(m);
    if hf.rank < m.rows() {
        return Err(Error::SingularMatrix);
    }
    Ok(hf.basis())
}

/// Canonical basis (nonzero Hermite columns) of the column span.
pub fn column_span_basis(a: &IntMat) -> IntMat {
    hermite_form(a).basis()
}

/// Basis of the integer kernel of `a`, in Hermite form.
pub fn integer_kernel(a: &IntMat) -> IntMat {
    let k = hermite_form(a).kernel();
    if k.cols() == 0 {
        return k;
    }
    column_span_basis(&k)
}

/// Smith form `u·m·v = s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    /// Nonzero diagonal entries `s_1 | s_2 | …`.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn row_axpy(m: &mut IntMat, dst: usize, src: usize, factor: &Int) {
    if factor.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let t = &m[(src, j)] * factor;
        m[(dst, j)] += t;
    }
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith_form(m: &IntMat) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block goes to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !s[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithForm { u, s, v };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let piv = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = -(&s[(i, t)] / &piv);
                row_axpy(&mut s, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = -(&s[(t, j)] / &piv);
                col_axpy(&mut s, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&s[(i, j)] % &piv).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = Int::one();
                    row_axpy(&mut s, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            for j in 0..cols {
                s[(t, j)] = -s[(t, j)].clone();
            }
            for j in 0..rows {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    SmithForm { u, s, v }
}

/// Smith normal form of a nonsingular square matrix.
pub fn snf(m: &IntMat) -> Result<SmithForm> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if m.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(smith_form(m))
}
