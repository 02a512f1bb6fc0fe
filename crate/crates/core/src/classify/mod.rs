//! Deciders for conjugacy, isomorphism, continuous orbit equivalence and
//! orbit equivalence of odometers given by free groups `Z^d ⊆ H ⊆ Q^d`.
//!
//! Completeness depends on the input: `d = 1` is always decided, `d = 2`
//! with two or more divisible lines is decided from finitely many
//! constraint-determined candidates, and everything else falls back to a
//! bounded search that may answer UNKNOWN.

mod certificate;
mod search;

use std::fmt;
use std::str::FromStr;

use crate::dsl::{fmt_witness, Report};
use crate::error::{Error, Result};
use crate::hgroup::LocalPresentation;
use crate::linalg::RatMat;

pub use certificate::Certificate;
use certificate::{conjugacy_certificate, line_conflict, local_invariants};
use search::{bounded_search, is_witness, line_candidates, Outcome};

/// Attached to NO answers in dimension 3 and higher.
pub const HIGH_DIMENSION_FLAG: &str = "necessity proven for d <= 2 only";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Conj,
    Iso,
    Coe,
    Oe,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::Conj, Relation::Iso, Relation::Coe, Relation::Oe];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Conj => "CONJ",
            Relation::Iso => "ISO",
            Relation::Coe => "COE",
            Relation::Oe => "OE",
        })
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "conj" => Ok(Relation::Conj),
            "iso" => Ok(Relation::Iso),
            "coe" => Ok(Relation::Coe),
            "oe" => Ok(Relation::Oe),
            _ => Err(Error::InvalidArgument(format!("unknown relation {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Bound on entries (and on the common denominator) in bounded searches.
    pub bound: i64,
    /// Collect every witness instead of stopping at the first.
    pub all_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            bound: 20,
            all_witnesses: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub relation: Relation,
    pub answer: Answer,
    /// The first witness in sorted order, for ISO and COE answers YES.
    pub witness: Option<RatMat>,
    /// All witnesses found (a single one unless every witness was asked for).
    pub witnesses: Vec<RatMat>,
    pub certificate: Option<Certificate>,
    pub flags: Vec<String>,
}

impl Verdict {
    fn yes(relation: Relation, witnesses: Vec<RatMat>) -> Self {
        Verdict {
            relation,
            answer: Answer::Yes,
            witness: witnesses.first().cloned(),
            witnesses,
            certificate: None,
            flags: Vec::new(),
        }
    }

    fn no(relation: Relation, certificate: Certificate) -> Self {
        Verdict {
            relation,
            answer: Answer::No,
            witness: None,
            witnesses: Vec::new(),
            certificate: Some(certificate),
            flags: Vec::new(),
        }
    }

    fn unknown(relation: Relation, bound: i64) -> Self {
        Verdict {
            answer: Answer::Unknown,
            ..Verdict::no(relation, Certificate::SearchExhausted { bound })
        }
    }

    fn flagged(mut self, flag: &str) -> Self {
        self.flags.push(flag.to_string());
        self
    }

    /// Exit status for the command line: 0 YES, 1 NO, 2 UNKNOWN.
    pub fn exit_code(&self) -> i32 {
        match self.answer {
            Answer::Yes => 0,
            Answer::No => 1,
            Answer::Unknown => 2,
        }
    }

    /// Rechecks every witness against `h`, `h2` and the determinant
    /// condition, a YES without witnesses against its defining invariant,
    /// and the invariant facts cited by a certificate.
    pub fn revalidate(&self, h: &LocalPresentation, h2: &LocalPresentation) -> bool {
        let yes_ok = self.answer != Answer::Yes
            || match self.relation {
                Relation::Conj => h == h2,
                Relation::Oe => h.superindex() == h2.superindex(),
                Relation::Iso => !self.witnesses.is_empty(),
                Relation::Coe => !self.witnesses.is_empty(),
            };
        let witnesses_ok = self.witnesses.iter().all(|w| match self.relation {
            Relation::Iso => is_witness(w, h, h2, true),
            _ => is_witness(w, h, h2, false),
        });
        let cert_ok = self.certificate.as_ref().is_none_or(|c| c.recheck(h, h2));
        yes_ok && witnesses_ok && cert_ok
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("relation", self.relation);
        if let Some(c) = &self.certificate {
            r.push("certificate", c);
        }
        for f in &self.flags {
            r.push("flag", f);
        }
        if self.witnesses.len() > 1 {
            r.push("witness_count", self.witnesses.len());
            for w in &self.witnesses {
                r.push("candidate", fmt_witness(w));
            }
        }
        r.push("verdict", self.answer);
        if let Some(w) = &self.witness {
            r.push("witness", fmt_witness(w));
        }
        r
    }
}

fn check_free(h: &LocalPresentation) -> Result<()> {
    if h.is_free() {
        Ok(())
    } else {
        Err(Error::NotDense)
    }
}

pub fn decide(
    relation: Relation,
    h: &LocalPresentation,
    h2: &LocalPresentation,
    opts: &SearchOptions,
) -> Result<Verdict> {
    match relation {
        Relation::Conj => decide_conjugacy(h, h2),
        Relation::Iso => decide_isomorphism(h, h2, opts),
        Relation::Coe => decide_coe(h, h2, opts),
        Relation::Oe => decide_oe(h, h2),
    }
}

/// Conjugate iff `H = H'`.
pub fn decide_conjugacy(h: &LocalPresentation, h2: &LocalPresentation) -> Result<Verdict> {
    check_free(h)?;
    check_free(h2)?;
    Ok(match conjugacy_certificate(h, h2) {
        None => Verdict::yes(Relation::Conj, Vec::new()),
        Some(c) => {
            let v = Verdict::no(Relation::Conj, c);
            if h.dim() == h2.dim() && h.dim() >= 3 {
                v.flagged(HIGH_DIMENSION_FLAG)
            } else {
                v
            }
        }
    })
}

/// Orbit equivalent iff the superindices agree; `d` and `d'` may differ.
pub fn decide_oe(h: &LocalPresentation, h2: &LocalPresentation) -> Result<Verdict> {
    check_free(h)?;
    check_free(h2)?;
    let (a, b) = (h.superindex(), h2.superindex());
    Ok(if a == b {
        Verdict::yes(Relation::Oe, Vec::new())
    } else {
        Verdict::no(
            Relation::Oe,
            Certificate::SuperindexMismatch { left: a, right: b },
        )
    })
}

pub fn decide_isomorphism(
    h: &LocalPresentation,
    h2: &LocalPresentation,
    opts: &SearchOptions,
) -> Result<Verdict> {
    decide_linear(Relation::Iso, h, h2, opts)
}

pub fn decide_coe(
    h: &LocalPresentation,
    h2: &LocalPresentation,
    opts: &SearchOptions,
) -> Result<Verdict> {
    decide_linear(Relation::Coe, h, h2, opts)
}

fn decide_linear(
    relation: Relation,
    h: &LocalPresentation,
    h2: &LocalPresentation,
    opts: &SearchOptions,
) -> Result<Verdict> {
    check_free(h)?;
    check_free(h2)?;
    let coe = relation == Relation::Coe;
    if h.dim() != h2.dim() {
        return Ok(Verdict::no(
            relation,
            Certificate::DimensionMismatch {
                left: h.dim(),
                right: h2.dim(),
            },
        ));
    }
    let d = h.dim();
    let (sa, sb) = (h.superindex(), h2.superindex());
    let invariant = if sa != sb {
        Some(Certificate::SuperindexMismatch {
            left: sa,
            right: sb,
        })
    } else {
        local_invariants(h, h2, !coe).or_else(|| if d == 2 { line_conflict(h, h2) } else { None })
    };
    if let Some(c) = invariant {
        let v = Verdict::no(relation, c);
        return Ok(if d >= 3 {
            v.flagged(HIGH_DIMENSION_FLAG)
        } else {
            v
        });
    }
    // d = 1: the group is determined by its superindex, and α = ±1.
    if d == 1 || h == h2 {
        let mut ws = vec![RatMat::identity(d)];
        if opts.all_witnesses {
            ws.extend(all_identity_like(h, h2, relation, opts));
        }
        ws.sort_by_key(|w| w.to_string());
        ws.dedup();
        return Ok(Verdict::yes(relation, ws));
    }
    if d >= 3 {
        return Ok(Verdict::unknown(relation, opts.bound).flagged(HIGH_DIMENSION_FLAG));
    }
    match line_candidates(h, h2, coe, opts.bound, opts.all_witnesses) {
        Some(Outcome::Found(ws)) => Ok(Verdict::yes(relation, ws)),
        Some(Outcome::Certified(c)) => Ok(Verdict::no(relation, c)),
        Some(Outcome::Exhausted(bound)) => Ok(Verdict::unknown(relation, bound)),
        None => {
            let ws = bounded_search(h, h2, coe, opts.bound, opts.all_witnesses);
            Ok(if ws.is_empty() {
                Verdict::unknown(relation, opts.bound)
            } else {
                Verdict::yes(relation, ws)
            })
        }
    }
}

/// Every witness found by brute force over `α = A/m` with `|A_ij| ≤ bound`
/// and `1 ≤ m ≤ bound` (`m = 1` for isomorphism), ignoring the line
/// constraints used by the deciders. Only for `d = 2`.
pub fn bounded_witnesses(
    relation: Relation,
    h: &LocalPresentation,
    h2: &LocalPresentation,
    bound: i64,
) -> Result<Vec<RatMat>> {
    if h.dim() != 2 || h2.dim() != 2 {
        return Err(Error::UnsupportedDimension(h.dim().max(h2.dim())));
    }
    match relation {
        Relation::Iso | Relation::Coe => Ok(bounded_search(
            h,
            h2,
            relation == Relation::Coe,
            bound,
            true,
        )),
        _ => Err(Error::InvalidArgument(format!(
            "no witness search for {relation}"
        ))),
    }
}

/// Remaining witnesses when `h = h2` (its stabilizer), through the same
/// searches used for distinct groups.
fn all_identity_like(
    h: &LocalPresentation,
    h2: &LocalPresentation,
    relation: Relation,
    opts: &SearchOptions,
) -> Vec<RatMat> {
    let coe = relation == Relation::Coe;
    match h.dim() {
        1 => vec![RatMat::identity(1).scale(&-crate::arith::rat(1, 1))],
        2 => match line_candidates(h, h2, coe, opts.bound, true) {
            Some(Outcome::Found(ws)) => ws,
            Some(_) => Vec::new(),
            None => bounded_search(h, h2, coe, opts.bound, true),
        },
        _ => Vec::new(),
    }
}
