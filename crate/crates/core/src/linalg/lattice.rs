//! Full-rank lattices in Q^d with a canonical Hermite representative.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMat, RatMat};
use super::normal_form::{column_span_basis, hermite_form, integer_kernel};
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

/// A full-rank subgroup of Q^d generated by the columns of a basis matrix.
///
/// The canonical form is `(1/den) · H` where `H` is the lower-triangular
/// column Hermite form of an integer matrix and `den ≥ 1` is minimal, so
/// two lattices are equal exactly when their canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    den: Int,
    hnf: IntMat,
}

impl Lattice {
    pub fn new(basis: &RatMat) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NotSquare);
        }
        let (m, a) = basis.clear_denominators();
        Self::from_scaled(m, a)
    }

    /// Lattice spanned by the columns of `gens` (any number of columns, full
    /// row rank required).
    pub fn from_generators(gens: &RatMat) -> Result<Self> {
        let (m, a) = gens.clear_denominators();
        Self::from_scaled(m, a)
    }

    pub fn from_int(basis: &IntMat) -> Result<Self> {
        Self::from_scaled(Int::one(), basis.clone())
    }

    /// The lattice `(1/m)·span(a)`.
    fn from_scaled(m: Int, a: IntMat) -> Result<Self> {
        let hf = hermite_form(&a);
        if hf.rank < a.rows() {
            return Err(Error::SingularMatrix);
        }
        let h = hf.basis();
        let g = m.gcd(&h.content());
        let hnf = h.map(|x| x / &g);
        Ok(Lattice { den: m / g, hnf })
    }

    /// Z^d.
    pub fn standard(d: usize) -> Self {
        Lattice {
            den: Int::one(),
            hnf: IntMat::identity(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.hnf.rows()
    }

    /// Canonical basis, columns generate the lattice.
    pub fn basis(&self) -> RatMat {
        let den = Rat::from_integer(self.den.clone());
        self.hnf.to_rat().map(|x| x / &den)
    }

    /// `(den, H)` with canonical basis `H / den`.
    pub fn scaled_hnf(&self) -> (&Int, &IntMat) {
        (&self.den, &self.hnf)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer Hermite basis when the lattice sits inside Z^d.
    pub fn integer_basis(&self) -> Option<&IntMat> {
        self.is_integral().then_some(&self.hnf)
    }

    /// Covolume `|det basis|`.
    pub fn covolume(&self) -> Rat {
        let d = (0..self.dim()).fold(Int::one(), |acc, i| acc * &self.hnf[(i, i)]);
        Rat::new(d, self.den.pow(self.dim() as u32))
    }

    /// The Hermite diagonal of an integral lattice, which is the shape of
    /// the canonical coset box of `Z^d / self`.
    pub fn hnf_diagonal(&self) -> Vec<Int> {
        (0..self.dim()).map(|i| self.hnf[(i, i)].clone()).collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim(), "dimension mismatch");
        // Forward substitution on the lower-triangular basis.
        let den = Rat::from_integer(self.den.clone());
        let mut rest: Vec<Rat> = v.iter().map(|x| x * &den).collect();
        for i in 0..self.dim() {
            let piv = Rat::from_integer(self.hnf[(i, i)].clone());
            let coef = &rest[i] / &piv;
            if !coef.is_integer() {
                return false;
            }
            for (k, r) in rest.iter_mut().enumerate().skip(i) {
                *r -= &coef * Rat::from_integer(self.hnf[(k, i)].clone());
            }
        }
        true
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        let v: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        self.contains(&v)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis().columns().iter().all(|c| other.contains(c))
    }

    /// `K* = { g : <k, g> ∈ Z for all k ∈ K }`, basis `B^{-T}`.
    pub fn dual(&self) -> Lattice {
        let inv = self
            .basis()
            .inverse()
            .expect("lattice basis is nonsingular");
        Lattice::new(&inv.transpose()).expect("dual basis is nonsingular")
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(&self.basis().hcat(&other.basis()))
            .expect("sum of full-rank lattices has full rank")
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        self.dual().sum(&other.dual()).dual()
    }

    /// Image `a·L`.
    pub fn transform(&self, a: &RatMat) -> Result<Lattice> {
        Lattice::new(&a.mul(&self.basis()))
    }

    /// Block-diagonal direct sum `L ⊕ M`.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice::new(&RatMat::block_diag(&self.basis(), &other.basis()))
            .expect("block-diagonal basis is nonsingular")
    }

    /// Generator `t0 > 0` of `{t ∈ Q : t·y ∈ L}` for nonzero `y`.
    pub fn line_generator(&self, y: &[Rat]) -> Rat {
        let w = self
            .basis()
            .inverse()
            .expect("lattice basis is nonsingular")
            .mul_vec(y);
        w.iter()
            .filter(|x| !x.is_zero())
            .map(|x| Rat::new(x.denom().clone(), x.numer().abs()))
            .reduce(|a, b| crate::arith::rat_lcm(&a, &b))
            .expect("line generator of the zero vector")
    }
}

/// `[sup : sub]`, which is a positive integer when `sub ⊆ sup`.
pub fn index(sub: &Lattice, sup: &Lattice) -> Result<Rat> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch {
            expected: sup.dim(),
            found: sub.dim(),
        });
    }
    if !sub.is_sublattice_of(sup) {
        return Err(Error::NotSublattice);
    }
    Ok(sub.covolume() / sup.covolume())
}

pub fn dual_lattice(l: &Lattice) -> Lattice {
    l.dual()
}

pub fn member(v: &[Rat], l: &Lattice) -> bool {
    l.contains(v)
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({})", self.basis())
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis())
    }
}

// Submodules of Z^d that need not have full rank. These are stored as the
// nonzero columns of their Hermite form, which is canonical.

/// Canonical basis of the integer span of `gens`.
pub fn module_basis(gens: &IntMat) -> IntMat {
    column_span_basis(gens)
}

/// Intersection of two submodules of Z^d given by basis columns.
pub fn module_intersection(a: &IntMat, b: &IntMat) -> IntMat {
    let d = a.rows();
    if a.cols() == 0 || b.cols() == 0 {
        return IntMat::zeros(d, 0);
    }
    let neg_b = b.map(|x| -x);
    let k = integer_kernel(&a.hcat(&neg_b));
    if k.cols() == 0 {
        return IntMat::zeros(d, 0);
    }
    let coeffs = k.select_rows(0..a.cols());
    module_basis(&a.mul(&coeffs))
}

/// Whether integer vector `v` lies in the module spanned by `basis`.
pub fn module_contains(basis: &IntMat, v: &[Int]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let col = IntMat::from_cols(&[v.to_vec()]);
    let joined = basis.hcat(&col);
    // v ∈ span iff appending it leaves the Hermite basis unchanged.
    module_basis(&joined) == module_basis(basis)
}

/// Product of the nonzero invariant factors, i.e. the order of the torsion
/// subgroup of `Z^d / span(basis)`.
pub fn module_torsion_order(basis: &IntMat) -> Int {
    let sf = super::normal_form::smith_form(basis);
    sf.invariant_factors()
        .iter()
        .fold(Int::one(), |acc, x| acc * x)
        .abs()
}
