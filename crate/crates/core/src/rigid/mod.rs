//! A dense `H ⊆ Q^2` in which every `Qx ∩ H` is cyclic, built from a chain
//! of matrices `α_n = [a 1; 1 b]` with prime determinant, plus the named
//! example groups.
//!
//! Vectors are rows here: `H_n = Z^2 α_n^{-1} ⋯ α_1^{-1}`. The column
//! lattices handed to other modules are the transposes.

mod gallery;

use std::sync::Mutex;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, primality_is_proven, Int, Rat};
use crate::dsl::Report;
use crate::error::{Error, Result};
use crate::hgroup::LevelGenerator;
use crate::linalg::{index, IntMat, Lattice, RatMat};

pub use gallery::{gallery, superindex_line, Expectation, Gallery, GalleryEntry};

/// Constant used for the first matrix. The step construction needs `K ≥ 3`.
pub const FIRST_CONSTANT: i64 = 3;

/// Cap on the number of `b` values tried per level.
pub const PRIME_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidStep {
    pub constant: Int,
    pub a: Int,
    pub b: Int,
    /// `ab - 1`, prime.
    pub det: Int,
    pub matrix: IntMat,
}

#[derive(Clone, Debug, Default)]
pub struct RigidProgram {
    steps: Vec<RigidStep>,
}

fn alpha(a: &Int, b: &Int) -> IntMat {
    IntMat::from_rows(vec![
        vec![a.clone(), Int::one()],
        vec![Int::one(), b.clone()],
    ])
}

impl RigidProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// A program already extended to `n` levels.
    pub fn with_levels(n: usize) -> Result<Self> {
        let mut p = Self::new();
        p.extend(n)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[RigidStep] {
        &self.steps
    }

    /// `α_n`, 1-based.
    pub fn step(&self, n: usize) -> &RigidStep {
        &self.steps[n - 1]
    }

    /// `K_n = n ∏_{i<n} ‖α_i‖`, with `K_1 = 3`.
    fn next_constant(&self) -> Int {
        let n = self.steps.len() + 1;
        if n == 1 {
            return Int::from(FIRST_CONSTANT);
        }
        self.steps.iter().fold(Int::from(n), |acc, s| {
            acc * s.matrix.to_rat().l1_operator_norm().to_integer()
        })
    }

    /// Appends levels until there are `n`; `a = K_n` and `b` is the least
    /// value `≥ K_n` making `ab - 1` prime.
    pub fn extend(&mut self, n: usize) -> Result<()> {
        while self.steps.len() < n {
            let k = self.next_constant();
            let a = k.clone();
            let mut b = k.clone();
            let mut tries = 0u64;
            while !is_prime(&(&a * &b - Int::one())) {
                b += Int::one();
                tries += 1;
                if tries >= PRIME_SEARCH_CAP {
                    return Err(Error::SearchExhausted(PRIME_SEARCH_CAP));
                }
            }
            let det = &a * &b - Int::one();
            let matrix = alpha(&a, &b);
            self.steps.push(RigidStep {
                constant: k,
                a,
                b,
                det,
                matrix,
            });
        }
        Ok(())
    }

    fn require(&self, n: usize) -> Result<()> {
        if n > self.steps.len() {
            Err(Error::DepthExceeded(self.steps.len()))
        } else {
            Ok(())
        }
    }

    /// `α_1 ⋯ α_n`; the identity for `n = 0`.
    pub fn product(&self, n: usize) -> Result<IntMat> {
        self.require(n)?;
        Ok(self.steps[..n]
            .iter()
            .fold(IntMat::identity(2), |acc, s| acc.mul(&s.matrix)))
    }

    /// `H_n` as a column lattice; `H_0 = Z^2`. Its row basis is
    /// `(α_1 ⋯ α_n)^{-1}`, so the column basis is the transpose.
    pub fn level(&self, n: usize) -> Result<Lattice> {
        let p = self.product(n)?.to_rat();
        Lattice::new(&p.inverse()?.transpose())
    }

    /// `H_n^* = Z^2 (α_1 ⋯ α_n)^T` in rows, i.e. the columns of `α_1 ⋯ α_n`.
    pub fn dual_level(&self, n: usize) -> Result<Lattice> {
        Lattice::from_int(&self.product(n)?)
    }
}

fn small(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidArgument("level too large for exhaustive checks".into()))
}

/// Outcome of the five exercises for one matrix, and of the claim that
/// `|mx|_1 ≥ K` whenever `x ∈ Z^2 α^{-1} \ Z^2` and `mx ∈ Z^2`, `m > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExerciseCheck {
    pub level: usize,
    pub items: [bool; 5],
    /// Item 2 read literally, with `(a, -1)` and `(-1, b)`.
    pub item2_literal: bool,
    pub claim: bool,
}

impl ExerciseCheck {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|&x| x) && self.claim
    }
}

/// The row lattice `Z^2 α^{-1}` as a column lattice.
fn inverse_rows(m: &IntMat) -> Result<Lattice> {
    Lattice::new(&m.to_rat().inverse()?.transpose())
}

/// Whether the row vector `v` lies in `Z^2 α^{-1}`, i.e. `vα ∈ Z^2`.
fn in_inverse_rows(v: &[Rat], m: &IntMat) -> bool {
    let row = RatMat::from_rows(vec![v.to_vec()]).mul(&m.to_rat());
    row.is_integral()
}

/// Smallest `|y|_1` over `y ≡ k (b, -1) (mod det)`, i.e. `det` times the
/// shortest vector in the coset `k (b,-1)/det + Z^2` of `Z^2 α^{-1} / Z^2`.
fn coset_min_l1(k: i64, b: i64, det: i64) -> i64 {
    let sym = |x: i64| {
        let r = x.rem_euclid(det);
        r.min(det - r)
    };
    sym(k * b) + sym(-k)
}

pub fn verify_exercises(program: &RigidProgram, n: usize) -> Result<ExerciseCheck> {
    program.require(n)?;
    let step = program.step(n);
    let m = &step.matrix;
    let (a, b, det, k) = (
        small(&step.a)?,
        small(&step.b)?,
        small(&step.det)?,
        small(&step.constant)?,
    );
    let d = Rat::from_integer(step.det.clone());
    let r = |x: i64| Rat::from_integer(x.into()) / &d;

    let item1 = Lattice::from_int(&m.transpose())?.is_sublattice_of(&Lattice::standard(2));

    let signed = |v: [i64; 2]| [[r(v[0]), r(v[1])], [r(-v[0]), r(-v[1])]];
    let all_in = |vs: [[i64; 2]; 2]| {
        vs.iter()
            .flat_map(|&v| signed(v))
            .all(|x| in_inverse_rows(&x, m))
    };
    // (1,0) α^{-1} = (b,-1)/det and (0,1) α^{-1} = (-1,a)/det.
    let item2 = all_in([[b, -1], [-1, a]]);
    let item2_literal = all_in([[a, -1], [-1, b]]);

    let lat = inverse_rows(m)?;
    let one = Rat::one();
    let item3 = lat.line_generator(&[one.clone(), Rat::zero()]) == one
        && lat.line_generator(&[Rat::zero(), one.clone()]) == one;

    let item4 = (1..a).all(|j| b <= j * b && j * b <= det - b + 1)
        && (1..b).all(|j| a <= j * a && j * a <= det - a + 1);

    // Every x ∈ Z^2 α^{-1} is k (b,-1)/det + z; the shortest nonzero x in
    // the coset k = 0 has norm 1.
    let coset_mins: Vec<i64> = (1..det).map(|j| coset_min_l1(j, b, det)).collect();
    let min_ab = a.min(b);
    let item5 = coset_mins.iter().all(|&y| y >= min_ab) && det >= min_ab;
    let claim = coset_mins.iter().all(|&y| y >= k);

    Ok(ExerciseCheck {
        level: n,
        items: [item1, item2, item3, item4, item5],
        item2_literal,
        claim,
    })
}

/// Compares the generators of `H_j ∩ Qy` for `|y|_1 ≤ j ≤ n`; they
/// coincide exactly when the intersection stops growing at level `|y|_1`.
pub fn verify_cyclicity(program: &RigidProgram, y: &[i64], n: usize) -> Result<bool> {
    if y.len() != 2 || y.iter().all(|&x| x == 0) {
        return Err(Error::InvalidArgument(
            "y must be a nonzero vector in Z^2".into(),
        ));
    }
    let m = y.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>();
    if n < m {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is below |y|_1 = {m}"
        )));
    }
    program.require(n)?;
    let yr: Vec<Rat> = y.iter().map(|&x| Rat::from_integer(x.into())).collect();
    let first = program.level(m)?.line_generator(&yr);
    for j in m + 1..=n {
        if program.level(j)?.line_generator(&yr) != first {
            return Ok(false);
        }
    }
    Ok(first.is_positive())
}

/// No nonzero vector of `H_n^*` has `ℓ^1` norm at most `radius`.
pub fn dual_ball_trivial(program: &RigidProgram, n: usize, radius: i64) -> Result<bool> {
    let dual = program.dual_level(n)?;
    if dual != program.level(n)?.dual() {
        return Ok(false);
    }
    for x in -radius..=radius {
        let rest = radius - x.abs();
        for y in -rest..=rest {
            if (x, y) != (0, 0) && dual.contains_int(&[x.into(), y.into()]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `H_{n-1} ⊆ H_n` with index `det α_n`, which is a proven prime.
pub fn verify_chain(program: &RigidProgram, n: usize) -> Result<bool> {
    program.require(n)?;
    let step = program.step(n);
    let (lo, hi) = (program.level(n - 1)?, program.level(n)?);
    let idx = index(&lo, &hi)?;
    Ok(lo.is_sublattice_of(&hi)
        && idx == Rat::from_integer(step.det.clone())
        && is_prime(&step.det)
        && primality_is_proven(&step.det)
        && step.a >= step.constant
        && step.b >= step.constant)
}

/// Levels of the group for [`crate::hgroup::ProgramPresentation`]:
/// generator level `n` is `H_{n-1}`, so level 1 is `Z^2`.
#[derive(Debug, Default)]
pub struct RigidGenerator {
    program: Mutex<RigidProgram>,
}

impl RigidGenerator {
    pub fn new() -> Self {
        Self::default()
    }
}

impl LevelGenerator for RigidGenerator {
    fn dim(&self) -> usize {
        2
    }

    fn level(&self, n: usize) -> Result<Lattice> {
        if n == 0 {
            return Err(Error::InvalidArgument("levels start at 1".into()));
        }
        let mut p = self.program.lock().expect("rigid program lock");
        p.extend(n - 1)?;
        p.level(n - 1)
    }
}

/// Report for `n` levels, with the exercise and density checks when
/// `verify` is set.
pub fn rigid_report(levels: usize, verify: bool) -> Result<Report> {
    let p = RigidProgram::with_levels(levels)?;
    let mut r = Report::new();
    r.push(
        "flag",
        "first constant K=3; a start with K=1 would give a=1, below the required a,b >= 3",
    );
    for (i, s) in p.steps().iter().enumerate() {
        let n = i + 1;
        r.push(format!("level{n}.K"), &s.constant);
        r.push(format!("level{n}.alpha"), s.matrix.to_string());
        r.push(format!("level{n}.det"), &s.det);
        let proof = if primality_is_proven(&s.det) {
            "proven"
        } else {
            "probable"
        };
        r.push(
            format!("level{n}.prime"),
            if is_prime(&s.det) { proof } else { "no" },
        );
    }
    if verify {
        let mut all = true;
        for n in 1..=levels {
            let ex = verify_exercises(&p, n)?;
            let chain = verify_chain(&p, n)?;
            let ball = dual_ball_trivial(&p, n, n as i64)?;
            let ok = |b: bool| if b { "pass" } else { "fail" };
            for (i, item) in ex.items.iter().enumerate() {
                r.push(format!("level{n}.exercise{}", i + 1), ok(*item));
            }
            r.push(format!("level{n}.exercise2_literal"), ok(ex.item2_literal));
            r.push(format!("level{n}.claim"), ok(ex.claim));
            r.push(format!("level{n}.chain"), ok(chain));
            r.push(format!("level{n}.dual_ball"), ok(ball));
            all &= ex.passed() && chain && ball;
        }
        let mut cyclic = true;
        for x in -(levels as i64)..=levels as i64 {
            let rest = levels as i64 - x.abs();
            for y in -rest..=rest {
                if (x, y) != (0, 0) {
                    cyclic &= verify_cyclicity(&p, &[x, y], levels)?;
                }
            }
        }
        r.push("cyclicity", if cyclic { "pass" } else { "fail" });
        all &= cyclic;
        r.push("verdict", if all { "YES" } else { "NO" });
    }
    Ok(r)
}
