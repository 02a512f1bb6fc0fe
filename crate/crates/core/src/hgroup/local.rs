//! Local presentations: finitely many primes, each carrying a module of the
//! form `B (Z_(p)^{d-r} ⊕ Q^r)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{
    denominator_primes, is_p_integral, lcm_denominators, split_p_part, valuation_int, Int, Rat,
};
use crate::error::{Error, Result};
use crate::linalg::{
    dot, integer_kernel, module_basis, module_intersection, module_torsion_order,
    primitive_direction, Exponent, IntMat, Lattice, RatMat, Supernatural,
};

/// The data of `H` at one prime `p`.
///
/// Stored through the integer dual module
/// `D_p = { g ∈ Z^d : <m, g> ∈ Z_(p) for every m in the local module M_p }`,
/// kept as the nonzero columns of its Hermite form. `D_p` has rank `d - r`
/// and determines `M_p = { v : <v, g> ∈ Z_(p) for g ∈ D_p }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalEntry {
    p: u64,
    dual: IntMat,
}

impl LocalEntry {
    fn from_dual(p: u64, dual: &IntMat) -> Self {
        LocalEntry {
            p,
            dual: module_basis(dual),
        }
    }

    fn trivial(p: u64, d: usize) -> Self {
        LocalEntry {
            p,
            dual: IntMat::identity(d),
        }
    }

    /// Builds the entry for `M_p = B (Z_(p)^{d-r} ⊕ Q^r)`, where the last
    /// `r` columns of `B` span the divisible directions.
    pub fn from_basis(p: u64, basis: &RatMat, r: usize) -> Result<Self> {
        let d = basis.rows();
        if !basis.is_square() {
            return Err(Error::NotSquare);
        }
        if r > d {
            return Err(Error::InvalidArgument(format!(
                "divisible rank {r} exceeds {d}"
            )));
        }
        let inv = basis.inverse()?;
        for j in 0..d {
            let coords = inv.col(j);
            if coords[..d - r].iter().any(|x| !is_p_integral(x, p)) {
                return Err(Error::MissingStandardLattice);
            }
        }
        let cols = basis.columns();
        let dual = dual_module_from_conditions(d, p, &cols[d - r..], &cols[..d - r]);
        Ok(LocalEntry { p, dual })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dual.rows()
    }

    /// Rank `r` of the divisible part.
    pub fn divisible_rank(&self) -> usize {
        self.dim() - self.dual.cols()
    }

    /// Canonical basis columns of `D_p`.
    pub fn dual_module(&self) -> &IntMat {
        &self.dual
    }

    pub fn is_trivial(&self) -> bool {
        self.dual == IntMat::identity(self.dim())
    }

    /// Primitive integer basis of the divisible subspace `V_p`.
    pub fn divisible_space(&self) -> Vec<Vec<Int>> {
        if self.dual.cols() == 0 {
            return (0..self.dim())
                .map(|i| {
                    (0..self.dim())
                        .map(|j| Int::from((i == j) as i64))
                        .collect()
                })
                .collect();
        }
        self.dual
            .transpose()
            .to_rat()
            .nullspace()
            .iter()
            .map(|v| primitive_direction(v))
            .collect()
    }

    /// `v_p` of the torsion of `Z^d / D_p`; equals `log_p [M_p : Z_(p)^d]`
    /// when `r = 0`.
    pub fn torsion_valuation(&self) -> u32 {
        valuation_int(&module_torsion_order(&self.dual), self.p)
    }

    pub fn exponent(&self) -> Exponent {
        if self.divisible_rank() > 0 {
            Exponent::Infinite
        } else {
            Exponent::Finite(self.torsion_valuation())
        }
    }

    /// Basis `B` with `M_p = B (Z_(p)^{d-r} ⊕ Q^r)`; the last `r` columns
    /// span `V_p` and every entry has a p-power denominator.
    pub fn basis(&self) -> RatMat {
        let d = self.dim();
        let k = self.dual.cols();
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
        if k == d {
            let lattice = Lattice::from_int(&self.dual).expect("full-rank dual module");
            cols.extend(lattice.dual().basis().columns());
        } else if k > 0 {
            let g = self.dual.to_rat();
            let gram = g.transpose().mul(&g);
            let pinv = g.mul(&gram.inverse().expect("dual module has full column rank"));
            for c in pinv.columns() {
                let den = lcm_denominators(c.iter());
                let (_, unit) = split_p_part(&den, self.p);
                let unit = Rat::from_integer(unit);
                cols.push(c.iter().map(|x| x * &unit).collect());
            }
        }
        for v in self.divisible_space() {
            cols.push(v.into_iter().map(Rat::from_integer).collect());
        }
        RatMat::from_cols(&cols)
    }

    /// Membership in the local module `M_p`.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.dual.columns().iter().all(|g| {
            let g: Vec<Rat> = g.iter().cloned().map(Rat::from_integer).collect();
            is_p_integral(&dot(v, &g), self.p)
        })
    }

    /// Rows describing `Z_(p) D_p` as `{x : zero·x = 0, integral·x ∈ Z_(p)}`.
    fn localized_dual_conditions(&self) -> (RatMat, RatMat) {
        let d = self.dim();
        let g = self.dual.to_rat();
        let zero_rows = if self.dual.cols() == 0 {
            RatMat::identity(d)
        } else {
            let ns = g.transpose().nullspace();
            RatMat::from_rows(ns)
        };
        let integral_rows = if self.dual.cols() == 0 {
            RatMat::zeros(0, d)
        } else {
            let gram = g.transpose().mul(&g);
            gram.inverse()
                .expect("dual module has full column rank")
                .mul(&g.transpose())
        };
        (zero_rows, integral_rows)
    }

    /// Entry of `a·H` at this prime: `{ g ∈ Z^d : a^T g ∈ Z_(p) D_p }`.
    fn transformed(&self, a: &RatMat) -> LocalEntry {
        let at = a.transpose();
        let (zero, integral) = self.localized_dual_conditions();
        let zero = if zero.rows() == 0 {
            zero
        } else {
            zero.mul(&at)
        };
        let integral = if integral.rows() == 0 {
            integral
        } else {
            integral.mul(&at)
        };
        let dual =
            dual_module_from_conditions(self.dim(), self.p, &rows_of(&zero), &rows_of(&integral));
        LocalEntry { p: self.p, dual }
    }
}

fn rows_of(m: &RatMat) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// `{ g ∈ Z^d : z·g = 0 for z in zero_rows, w·g ∈ Z_(p) for w in integral_rows }`.
pub(crate) fn dual_module_from_conditions(
    d: usize,
    p: u64,
    zero_rows: &[Vec<Rat>],
    integral_rows: &[Vec<Rat>],
) -> IntMat {
    let scale = |row: &[Rat]| -> (Int, Vec<Int>) {
        let den = lcm_denominators(row.iter());
        let ints = row
            .iter()
            .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
            .collect();
        (den, ints)
    };
    // Each integral row w = w' / (p^e u) becomes w'·g - p^e t = 0 with an
    // auxiliary integer t.
    let mut congruences: Vec<(Int, Vec<Int>)> = Vec::new();
    for w in integral_rows {
        let (den, ints) = scale(w);
        let (e, _) = split_p_part(&den, p);
        if e > 0 {
            congruences.push((Int::from(p).pow(e), ints));
        }
    }
    let zero: Vec<Vec<Int>> = zero_rows.iter().map(|z| scale(z).1).collect();
    if zero.is_empty() && congruences.is_empty() {
        return IntMat::identity(d);
    }
    let n_aux = congruences.len();
    let n_rows = zero.len() + n_aux;
    let mut m = IntMat::zeros(n_rows, d + n_aux);
    for (i, z) in zero.iter().enumerate() {
        for j in 0..d {
            m[(i, j)] = z[j].clone();
        }
    }
    for (k, (modulus, w)) in congruences.iter().enumerate() {
        let i = zero.len() + k;
        for j in 0..d {
            m[(i, j)] = w[j].clone();
        }
        m[(i, d + k)] = -modulus.clone();
    }
    let kernel = integer_kernel(&m);
    if kernel.cols() == 0 {
        return IntMat::zeros(d, 0);
    }
    module_basis(&kernel.select_rows(0..d))
}

/// A group `Z^d ⊆ H ⊆ Q^d` described by finitely many local entries.
///
/// Constructors always canonicalize: trivial entries are dropped and every
/// dual module is in Hermite form, so derived equality is group equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalPresentation {
    d: usize,
    entries: BTreeMap<u64, LocalEntry>,
}

/// One summand of an `oplus(...)` expression.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Component {
    #[default]
    Z,
    /// `Z[1/n]`, inverting every prime factor of `n`.
    Inverted(Int),
}

impl LocalPresentation {
    /// Z^d.
    pub fn standard(d: usize) -> Self {
        LocalPresentation {
            d,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(d: usize, entries: impl IntoIterator<Item = LocalEntry>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for e in entries {
            if e.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: e.dim(),
                });
            }
            let p = e.prime();
            if map.insert(p, e).is_some() {
                return Err(Error::InvalidArgument(format!("prime {p} listed twice")));
            }
        }
        Ok(Self::normalized(d, map))
    }

    fn normalized(d: usize, mut entries: BTreeMap<u64, LocalEntry>) -> Self {
        entries.retain(|_, e| !e.is_trivial());
        LocalPresentation { d, entries }
    }

    /// `C_1 ⊕ … ⊕ C_d` with each component `Z` or `Z[1/n]`.
    pub fn oplus(components: &[Component]) -> Self {
        let d = components.len();
        let mut primes: Vec<u64> = components
            .iter()
            .flat_map(|c| match c {
                Component::Z => Vec::new(),
                Component::Inverted(n) => crate::arith::prime_factors(n),
            })
            .collect();
        primes.sort_unstable();
        primes.dedup();
        let entries = primes.into_iter().map(|p| {
            let kept: Vec<usize> = (0..d)
                .filter(|&i| match &components[i] {
                    Component::Z => true,
                    Component::Inverted(n) => !(n % Int::from(p)).is_zero(),
                })
                .collect();
            LocalEntry::from_dual(p, &IntMat::identity(d).select_cols(kept))
        });
        Self::normalized(d, entries.map(|e| (e.p, e)).collect())
    }

    /// `Z^d + Z v`.
    pub fn generated_by(v: &[Rat]) -> Self {
        let d = v.len();
        let entries = denominator_primes(v.iter()).into_iter().map(|p| {
            let dual = dual_module_from_conditions(d, p, &[], &[v.to_vec()]);
            (p, LocalEntry { p, dual })
        });
        Self::normalized(d, entries.collect())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> impl Iterator<Item = &LocalEntry> {
        self.entries.values()
    }

    pub fn entry(&self, p: u64) -> Option<&LocalEntry> {
        self.entries.get(&p)
    }

    /// Entry at `p`, trivial when `p` is outside the support.
    pub fn entry_or_trivial(&self, p: u64) -> LocalEntry {
        self.entries
            .get(&p)
            .cloned()
            .unwrap_or_else(|| LocalEntry::trivial(p, self.d))
    }

    pub fn support(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    pub fn is_standard(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.d, "dimension mismatch");
        denominator_primes(v.iter())
            .into_iter()
            .all(|p| self.entries.get(&p).is_some_and(|e| e.contains(v)))
    }

    pub fn superindex(&self) -> Supernatural {
        let mut s = Supernatural::one();
        for e in self.entries() {
            s.set(e.prime(), e.exponent());
        }
        s
    }

    /// Whether the divisible subspaces together span Q^d, i.e. `H* = 0`.
    pub fn is_free(&self) -> bool {
        let rows: Vec<Vec<Rat>> = self
            .entries()
            .flat_map(|e| e.divisible_space())
            .map(|v| v.into_iter().map(Rat::from_integer).collect())
            .collect();
        !rows.is_empty() && RatMat::from_rows(rows).rank() == self.d
    }

    /// Module sum `H + H'`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let mut primes = self.support();
        primes.extend(other.support());
        primes.sort_unstable();
        primes.dedup();
        let entries = primes.into_iter().map(|p| {
            let a = self.entry_or_trivial(p);
            let b = other.entry_or_trivial(p);
            let dual = module_intersection(&a.dual, &b.dual);
            (p, LocalEntry { p, dual })
        });
        Ok(Self::normalized(self.d, entries.collect()))
    }

    /// `H ⊕ H'` in dimension `d + d'`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let d = self.d + other.d;
        let mut primes = self.support();
        primes.extend(other.support());
        primes.sort_unstable();
        primes.dedup();
        let entries = primes.into_iter().map(|p| {
            let a = self.entry_or_trivial(p);
            let b = other.entry_or_trivial(p);
            let dual = IntMat::block_diag(&a.dual, &b.dual);
            (p, LocalEntry::from_dual(p, &dual))
        });
        Self::normalized(d, entries.collect())
    }

    /// `a·H` for nonsingular rational `a`; fails when `a·H` does not contain
    /// Z^d.
    pub fn apply_matrix(&self, a: &RatMat) -> Result<Self> {
        if a.rows() != self.d || !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: a.rows(),
            });
        }
        let inv = a.inverse()?;
        if !inv.columns().iter().all(|c| self.contains(c)) {
            return Err(Error::MissingStandardLattice);
        }
        let mut primes = self.support();
        primes.extend(denominator_primes(a.entries()));
        primes.sort_unstable();
        primes.dedup();
        let entries = primes.into_iter().map(|p| {
            let e = self.entry_or_trivial(p).transformed(a);
            (p, e)
        });
        Ok(Self::normalized(self.d, entries.collect()))
    }

    /// Whether `self ⊆ other`.
    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.d == other.d
            && self.entries().all(|e| {
                let o = other.entry_or_trivial(e.prime());
                // M_p ⊆ M'_p iff D'_p ⊆ D_p.
                o.dual
                    .columns()
                    .iter()
                    .all(|g| crate::linalg::module_contains(&e.dual, g))
            })
    }

    /// Dual of `H ∩ (1/c) Z^d`: the integer lattice `∩_p (D_p + p^{v_p(c)} Z^d)`.
    pub fn truncation_dual(&self, c: &Int) -> Lattice {
        let mut g = Lattice::standard(self.d);
        for e in self.entries() {
            let k = valuation_int(c, e.prime());
            if k == 0 {
                continue;
            }
            let pk = Int::from(e.prime()).pow(k);
            let gens = e.dual.hcat(&IntMat::identity(self.d).map(|x| x * &pk));
            let local = Lattice::from_generators(&gens.to_rat()).expect("contains p^k Z^d");
            g = g.intersection(&local);
        }
        g
    }

    /// `H ∩ (1/c) Z^d`.
    pub fn truncation(&self, c: &Int) -> Lattice {
        self.truncation_dual(c).dual()
    }
}

impl From<i64> for Component {
    /// `1` means `Z`, `n ≥ 2` means `Z[1/n]`.
    fn from(n: i64) -> Self {
        if n.abs() <= 1 {
            Component::Z
        } else {
            Component::Inverted(Int::from(n))
        }
    }
}

/// Convenience for `Z[1/n]`-style factors in tests and the gallery.
pub fn inverted(n: i64) -> Component {
    Component::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z_inv(ns: &[i64]) -> LocalPresentation {
        LocalPresentation::oplus(&ns.iter().map(|&n| inverted(n)).collect::<Vec<_>>())
    }

    fn fuchs() -> LocalPresentation {
        z_inv(&[2, 3])
            .sum(&LocalPresentation::generated_by(&[rat(1, 5), rat(1, 5)]))
            .unwrap()
    }

    fn v(xs: &[(i64, i64)]) -> Vec<Rat> {
        xs.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn oplus_support_and_lines() {
        let h = z_inv(&[2, 3]);
        assert_eq!(h.support(), vec![2, 3]);
        let e2 = h.entry(2).unwrap();
        assert_eq!(e2.divisible_rank(), 1);
        assert_eq!(e2.divisible_space(), vec![vec![Int::from(1), Int::from(0)]]);
        let e3 = h.entry(3).unwrap();
        assert_eq!(e3.divisible_space(), vec![vec![Int::from(0), Int::from(1)]]);
        assert!(z_inv(&[1, 1]).is_standard());
    }

    #[test]
    fn fuchs_entry_at_five() {
        let h = fuchs();
        assert_eq!(h.support(), vec![2, 3, 5]);
        let e5 = h.entry(5).unwrap();
        assert_eq!(e5.divisible_rank(), 0);
        let expected =
            RatMat::from_rows(vec![vec![rat(1, 5), rat(0, 1)], vec![rat(1, 5), rat(1, 1)]]);
        assert_eq!(e5.basis(), expected);
        assert!(h.contains(&v(&[(1, 5), (1, 5)])));
        assert!(!h.contains(&v(&[(1, 5), (0, 1)])));
        assert!(h.contains(&v(&[(7, 20), (4, 15)])));
        assert!(!h.contains(&v(&[(7, 20), (2, 15)])));
        assert_eq!(h.superindex().to_string(), "2^inf*3^inf*5^1");
    }

    #[test]
    fn from_basis_round_trip() {
        let h = fuchs();
        for e in h.entries() {
            let again = LocalEntry::from_basis(e.prime(), &e.basis(), e.divisible_rank()).unwrap();
            assert_eq!(&again, e);
        }
        let bad = RatMat::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(matches!(
            LocalEntry::from_basis(2, &bad, 0),
            Err(Error::MissingStandardLattice)
        ));
    }

    #[test]
    fn equality_and_swap() {
        let a = z_inv(&[2, 3]);
        let b = z_inv(&[3, 2]);
        assert_ne!(a, b);
        let swap = RatMat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.apply_matrix(&swap).unwrap(), b);
        assert_eq!(a.apply_matrix(&RatMat::identity(2)).unwrap(), a);
        assert_ne!(fuchs(), a);
    }

    #[test]
    fn rational_matrix_moves_lattice_part() {
        // Z[1/2] ⊕ 5^{-1}Z[1/3]  --diag(1/5, 5)-->  5^{-1}Z[1/2] ⊕ Z[1/3]
        let h = z_inv(&[2, 3])
            .sum(&LocalPresentation::generated_by(&v(&[(0, 1), (1, 5)])))
            .unwrap();
        let target = z_inv(&[2, 3])
            .sum(&LocalPresentation::generated_by(&v(&[(1, 5), (0, 1)])))
            .unwrap();
        let alpha = RatMat::diagonal(&[rat(1, 5), rat(5, 1)]);
        assert_eq!(h.apply_matrix(&alpha).unwrap(), target);
        // The inverse direction fails: diag(5, 1/5)·Z² misses (1, 0).
        let beta = RatMat::diagonal(&[rat(5, 1), rat(1, 5)]);
        assert!(matches!(
            z_inv(&[2, 3]).apply_matrix(&beta),
            Err(Error::MissingStandardLattice)
        ));
    }

    #[test]
    fn freeness() {
        assert!(z_inv(&[2, 3]).is_free());
        assert!(!z_inv(&[2, 1]).is_free());
        assert!(z_inv(&[2]).is_free());
        assert!(!LocalPresentation::standard(1).is_free());
    }

    #[test]
    fn direct_sums() {
        let a = z_inv(&[2]);
        let b = z_inv(&[3]);
        assert_eq!(a.direct_sum(&b), z_inv(&[2, 3]));
        assert_eq!(
            z_inv(&[1]).direct_sum(&z_inv(&[1])),
            LocalPresentation::standard(2)
        );
        let aa = a.direct_sum(&a);
        assert_eq!(aa.entry(2).unwrap().divisible_rank(), 2);
    }

    #[test]
    fn truncations() {
        let h = z_inv(&[2, 3]);
        let g2 = h.truncation_dual(&Int::from(2));
        assert_eq!(
            g2,
            Lattice::from_int(&IntMat::from_i64(&[&[2, 0], &[0, 1]])).unwrap()
        );
        let h2 = h.truncation(&Int::from(2));
        assert_eq!(
            h2,
            Lattice::new(&RatMat::diagonal(&[rat(1, 2), rat(1, 1)])).unwrap()
        );
    }
}
