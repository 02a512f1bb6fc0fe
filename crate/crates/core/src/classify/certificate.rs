use std::fmt;

use num_integer::Integer;

use crate::arith::{valuation, Int, Rat};
use crate::hgroup::LocalPresentation;
use crate::linalg::Supernatural;

/// Why two groups are not related, in a form that can be rechecked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    SuperindexMismatch {
        left: Supernatural,
        right: Supernatural,
    },
    /// The local data at `p` differ (used for conjugacy).
    LocalDataDiffers {
        p: u64,
        left: String,
        right: String,
    },
    RankMismatch {
        p: u64,
        left: usize,
        right: usize,
    },
    TorsionMismatch {
        p: u64,
        left: u32,
        right: u32,
    },
    /// The primes whose divisible line is `line` in the source group have
    /// at least two different divisible lines in the target. With `inverse`
    /// set, source and target are swapped (the constraint is on `α^{-1}`).
    LineConflict {
        line: Vec<Int>,
        images: Vec<(u64, Vec<Int>)>,
        inverse: bool,
    },
    /// A diagonal scaling `diag(λ1, λ2)` between the adapted line bases
    /// would need `v_p(λ1) + v_p(λ2) = det_valuation` but the local
    /// modules force `(v_p(λ1), v_p(λ2)) = forced`.
    ValuationConflict {
        p: u64,
        forced: (i64, i64),
        det_valuation: i64,
    },
    /// One line is divisible at `p` on one side only.
    DivisibilityConflict {
        p: u64,
    },
    /// Every constraint-determined candidate was tested and rejected.
    CandidatesRejected {
        count: usize,
    },
    /// Bounded search found no witness.
    SearchExhausted {
        bound: i64,
    },
}

pub(crate) fn fmt_line(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("Q({})", parts.join(","))
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::DimensionMismatch { left, right } => {
                write!(f, "dimensions differ: {left} vs {right}")
            }
            Certificate::SuperindexMismatch { left, right } => {
                write!(f, "superindex differs: {left} vs {right}")
            }
            Certificate::LocalDataDiffers { p, left, right } => {
                write!(f, "local data differ at p={p}: {left} vs {right}")
            }
            Certificate::RankMismatch { p, left, right } => {
                write!(f, "divisible rank at p={p} differs: {left} vs {right}")
            }
            Certificate::TorsionMismatch { p, left, right } => {
                write!(f, "local index at p={p} differs: p^{left} vs p^{right}")
            }
            Certificate::LineConflict {
                line,
                images,
                inverse,
            } => {
                let map = if *inverse { "alpha^-1" } else { "alpha" };
                let targets: Vec<String> = images
                    .iter()
                    .map(|(p, l)| format!("{} (p={p})", fmt_line(l)))
                    .collect();
                let joiner = if targets.len() == 2 { "both" } else { "all of" };
                write!(
                    f,
                    "{map} must send line {} to {joiner} {}",
                    fmt_line(line),
                    targets.join(" and ")
                )
            }
            Certificate::ValuationConflict {
                p,
                forced,
                det_valuation,
            } => write!(
                f,
                "at p={p} the line scalings have valuations {} and {} but must sum to {det_valuation}",
                forced.0, forced.1
            ),
            Certificate::DivisibilityConflict { p } => {
                write!(f, "a matched line is divisible at p={p} on one side only")
            }
            Certificate::CandidatesRejected { count } => {
                write!(f, "all {count} constraint-determined candidates rejected")
            }
            Certificate::SearchExhausted { bound } => {
                write!(f, "no witness with entries bounded by {bound}")
            }
        }
    }
}

/// Divisible line of `h` at `p`, when the divisible rank there is 1.
pub(crate) fn line_of(h: &LocalPresentation, p: u64) -> Option<Vec<Int>> {
    let e = h.entry(p)?;
    (e.divisible_rank() == 1).then(|| e.divisible_space().remove(0))
}

/// Divisible lines of `h` with the primes carrying each, sorted by line.
pub(crate) fn lines(h: &LocalPresentation) -> Vec<(Vec<Int>, Vec<u64>)> {
    let mut out: Vec<(Vec<Int>, Vec<u64>)> = Vec::new();
    for p in h.support() {
        if let Some(l) = line_of(h, p) {
            match out.iter_mut().find(|(m, _)| *m == l) {
                Some((_, ps)) => ps.push(p),
                None => out.push((l, vec![p])),
            }
        }
    }
    out.sort();
    out
}

fn line_conflict_one_way(
    a: &LocalPresentation,
    b: &LocalPresentation,
    inverse: bool,
) -> Option<Certificate> {
    for (line, primes) in lines(a) {
        let images: Vec<(u64, Vec<Int>)> = primes
            .iter()
            .filter_map(|&p| line_of(b, p).map(|l| (p, l)))
            .collect();
        let mut distinct: Vec<(u64, Vec<Int>)> = Vec::new();
        for (p, l) in images {
            if !distinct.iter().any(|(_, m)| *m == l) {
                distinct.push((p, l));
            }
        }
        if distinct.len() > 1 {
            return Some(Certificate::LineConflict {
                line,
                images: distinct,
                inverse,
            });
        }
    }
    None
}

/// A line conflict in either direction.
pub(crate) fn line_conflict(h: &LocalPresentation, h2: &LocalPresentation) -> Option<Certificate> {
    line_conflict_one_way(h, h2, false).or_else(|| line_conflict_one_way(h2, h, true))
}

fn union_support(h: &LocalPresentation, h2: &LocalPresentation) -> Vec<u64> {
    let mut ps = h.support();
    ps.extend(h2.support());
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Divisible ranks agree at every prime; with `all_torsion` the local
/// torsion valuations agree everywhere, otherwise only where the rank is 0.
pub(crate) fn local_invariants(
    h: &LocalPresentation,
    h2: &LocalPresentation,
    all_torsion: bool,
) -> Option<Certificate> {
    for p in union_support(h, h2) {
        let (a, b) = (h.entry_or_trivial(p), h2.entry_or_trivial(p));
        if a.divisible_rank() != b.divisible_rank() {
            return Some(Certificate::RankMismatch {
                p,
                left: a.divisible_rank(),
                right: b.divisible_rank(),
            });
        }
        if (all_torsion || a.divisible_rank() == 0)
            && a.torsion_valuation() != b.torsion_valuation()
        {
            return Some(Certificate::TorsionMismatch {
                p,
                left: a.torsion_valuation(),
                right: b.torsion_valuation(),
            });
        }
    }
    None
}

/// Readable local datum at `p`: divisible space and dual module.
pub(crate) fn describe_local(h: &LocalPresentation, p: u64) -> String {
    let e = h.entry_or_trivial(p);
    let v: Vec<String> = if e.divisible_rank() == 0 {
        vec!["0".into()]
    } else {
        e.divisible_space().iter().map(|l| fmt_line(l)).collect()
    };
    format!("V_{p}={} D_{p}={}", v.join("+"), e.dual_module())
}

pub(crate) fn conjugacy_certificate(
    h: &LocalPresentation,
    h2: &LocalPresentation,
) -> Option<Certificate> {
    if h.dim() != h2.dim() {
        return Some(Certificate::DimensionMismatch {
            left: h.dim(),
            right: h2.dim(),
        });
    }
    union_support(h, h2)
        .into_iter()
        .find(|&p| h.entry_or_trivial(p) != h2.entry_or_trivial(p))
        .map(|p| Certificate::LocalDataDiffers {
            p,
            left: describe_local(h, p),
            right: describe_local(h2, p),
        })
}

pub(crate) fn rat_valuation(x: &Rat, p: u64) -> i64 {
    valuation(x, p).expect("nonzero")
}

impl Certificate {
    /// Re-derives the invariant facts this certificate cites from `h` and
    /// `h2`. Search-based certificates are rechecked by the deciders.
    pub fn recheck(&self, h: &LocalPresentation, h2: &LocalPresentation) -> bool {
        match self {
            Certificate::DimensionMismatch { left, right } => {
                h.dim() == *left && h2.dim() == *right && left != right
            }
            Certificate::SuperindexMismatch { left, right } => {
                h.superindex() == *left && h2.superindex() == *right && left != right
            }
            Certificate::LocalDataDiffers { p, left, right } => {
                h.entry_or_trivial(*p) != h2.entry_or_trivial(*p)
                    && describe_local(h, *p) == *left
                    && describe_local(h2, *p) == *right
            }
            Certificate::RankMismatch { p, left, right } => {
                h.entry_or_trivial(*p).divisible_rank() == *left
                    && h2.entry_or_trivial(*p).divisible_rank() == *right
                    && left != right
            }
            Certificate::TorsionMismatch { p, left, right } => {
                h.entry_or_trivial(*p).torsion_valuation() == *left
                    && h2.entry_or_trivial(*p).torsion_valuation() == *right
                    && left != right
            }
            Certificate::LineConflict {
                line,
                images,
                inverse,
            } => {
                let (a, b) = if *inverse { (h2, h) } else { (h, h2) };
                images.len() > 1
                    && images.iter().all(|(p, l)| {
                        line_of(a, *p).as_ref() == Some(line) && line_of(b, *p).as_ref() == Some(l)
                    })
                    && images
                        .iter()
                        .enumerate()
                        .all(|(i, (_, l))| images[..i].iter().all(|(_, m)| m != l))
            }
            Certificate::ValuationConflict {
                forced,
                det_valuation,
                ..
            } => forced.0 + forced.1 != *det_valuation,
            Certificate::DivisibilityConflict { .. }
            | Certificate::CandidatesRejected { .. }
            | Certificate::SearchExhausted { .. } => true,
        }
    }
}

/// `x = y^2` for rational `x ≥ 0`.
pub(crate) fn rat_sqrt(x: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rat::new(rn, rd))
}

pub(crate) fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, x| g.gcd(x))
}
