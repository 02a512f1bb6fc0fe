//! Witness searches for isomorphism (`α ∈ GL_2(Z)`) and continuous orbit
//! equivalence (`α ∈ GL_2(Q)`, `|det α| = 1`).

use num_traits::{One, Pow, Signed, Zero};

use super::certificate::{gcd_all, line_of, lines, rat_sqrt, rat_valuation, Certificate};
use crate::arith::{prime_factors, valuation_int, Int, Rat};
use crate::hgroup::LocalPresentation;
use crate::linalg::{to_rat_vec, RatMat};

pub(crate) enum Outcome {
    Found(Vec<RatMat>),
    Certified(Certificate),
    Exhausted(i64),
}

/// Whether `a` is an admissible witness carrying `h` onto `h2`.
pub(crate) fn is_witness(
    a: &RatMat,
    h: &LocalPresentation,
    h2: &LocalPresentation,
    integral: bool,
) -> bool {
    let Ok(det) = a.det() else { return false };
    if det.abs() != Rat::one() || (integral && !a.is_integral()) {
        return false;
    }
    matches!(h.apply_matrix(a), Ok(img) if img == *h2)
}

fn sort_witnesses(mut ws: Vec<RatMat>) -> Vec<RatMat> {
    ws.sort_by_key(|w| w.to_string());
    ws.dedup();
    ws
}

/// `s` with `N ∩ Q e_i = p^s Z_(p) e_i`, where `N = W^{-1} M_p(h)`;
/// `None` when the line is divisible.
fn coordinate_offset(h: &LocalPresentation, w: &RatMat, p: u64, i: usize) -> Option<i64> {
    let e = h.entry_or_trivial(p);
    let col = w.col(i);
    e.dual_module()
        .columns()
        .iter()
        .map(|g| {
            col.iter().zip(g).fold(Rat::zero(), |acc, (a, b)| {
                acc + a * Rat::from_integer(b.clone())
            })
        })
        .filter(|x| !x.is_zero())
        .map(|x| rat_valuation(&x, p))
        .min()
        .map(|m| -m)
}

fn pow(p: u64, k: i64) -> Rat {
    Rat::from_integer(Int::from(p)).pow(k as i32)
}

/// Tier (ii): at least two divisible lines. The lines and their images
/// pin `α` to `U' diag(λ1, λ2) U^{-1}`; the scalings are determined by
/// signs (isomorphism), by a third line, or by per-prime valuations.
/// Returns `None` when `h` has fewer than two lines.
pub(crate) fn line_candidates(
    h: &LocalPresentation,
    h2: &LocalPresentation,
    coe: bool,
    bound: i64,
    all_witnesses: bool,
) -> Option<Outcome> {
    let ls = lines(h);
    if ls.len() < 2 {
        return None;
    }
    let image = |i: usize| line_of(h2, ls[i].1[0]).expect("ranks already matched");
    let u = RatMat::from_cols(&[to_rat_vec(&ls[0].0), to_rat_vec(&ls[1].0)]);
    let u2 = RatMat::from_cols(&[to_rat_vec(&image(0)), to_rat_vec(&image(1))]);
    let u_inv = u.inverse().expect("distinct lines");
    let ratio_d = u.det().expect("square") / u2.det().expect("square");

    let signs = [Rat::one(), -Rat::one()];
    let mut scalings: Vec<(Rat, Rat)> = Vec::new();
    let mut exhaustive = true;
    if !coe {
        for s in &signs {
            for t in &signs {
                scalings.push((s.clone(), t.clone()));
            }
        }
    } else if ls.len() >= 3 {
        let a = u_inv.mul_vec(&to_rat_vec(&ls[2].0));
        let b = u2
            .inverse()
            .expect("distinct lines")
            .mul_vec(&to_rat_vec(&image(2)));
        let rho = &a[1] * &b[0] / (&a[0] * &b[1]);
        for eps in &signs {
            if let Some(l2) = rat_sqrt(&(eps * &ratio_d / &rho)) {
                for s in &signs {
                    let l2 = s * &l2;
                    scalings.push((&rho * &l2, l2));
                }
            }
        }
    } else {
        let mut primes: Vec<u64> = h.support();
        primes.extend(h2.support());
        primes.extend(prime_factors(ratio_d.numer()));
        primes.extend(prime_factors(ratio_d.denom()));
        primes.sort_unstable();
        primes.dedup();
        let mut base = Rat::one();
        let mut free = Vec::new();
        for &p in &primes {
            let mut k = [None, None];
            for (i, ki) in k.iter_mut().enumerate() {
                match (
                    coordinate_offset(h, &u, p, i),
                    coordinate_offset(h2, &u2, p, i),
                ) {
                    (Some(s), Some(t)) => *ki = Some(t - s),
                    (None, None) => {}
                    _ => return Some(Outcome::Certified(Certificate::DivisibilityConflict { p })),
                }
            }
            let vd =
                valuation_int(ratio_d.numer(), p) as i64 - valuation_int(ratio_d.denom(), p) as i64;
            match k {
                [Some(a), Some(b)] if a + b != vd => {
                    return Some(Outcome::Certified(Certificate::ValuationConflict {
                        p,
                        forced: (a, b),
                        det_valuation: vd,
                    }))
                }
                [Some(a), _] => base *= pow(p, a),
                [None, Some(b)] => base *= pow(p, vd - b),
                [None, None] => free.push(p),
            }
        }
        let mut bases = vec![base];
        for &p in &free {
            exhaustive = false;
            let mut top = 0i64;
            while Int::from(p).pow(top as u32 + 1) <= Int::from(bound) {
                top += 1;
            }
            bases = bases
                .iter()
                .flat_map(|b| (-top..=top).map(move |t| b * pow(p, t)))
                .collect();
        }
        for b in bases {
            for s in &signs {
                for eps in &signs {
                    let l1 = s * &b;
                    let l2 = eps * &ratio_d / &l1;
                    scalings.push((l1, l2));
                }
            }
        }
    }

    let count = scalings.len();
    let mut found = Vec::new();
    for (l1, l2) in scalings {
        let a = u2.mul(&RatMat::diagonal(&[l1, l2])).mul(&u_inv);
        if is_witness(&a, h, h2, !coe) {
            found.push(a);
            if !all_witnesses {
                break;
            }
        }
    }
    Some(if !found.is_empty() {
        Outcome::Found(sort_witnesses(found))
    } else if exhaustive {
        Outcome::Certified(Certificate::CandidatesRejected { count })
    } else {
        Outcome::Exhausted(bound)
    })
}

/// `α` maps every divisible line of `h` onto the line of `h2` at the same
/// prime; `a` is an integer matrix proportional to `α`.
fn respects_lines(a: &[i64; 4], constraints: &[(Vec<Int>, Vec<Int>)]) -> bool {
    constraints.iter().all(|(u, v)| {
        let x = Int::from(a[0]) * &u[0] + Int::from(a[1]) * &u[1];
        let y = Int::from(a[2]) * &u[0] + Int::from(a[3]) * &u[1];
        x * &v[1] - y * &v[0] == Int::zero()
    })
}

/// Tier (iii): all `α = A/m` with `|A_ij| ≤ bound`, `1 ≤ m ≤ bound` (only
/// `m = 1` for isomorphism) and `|det α| = 1`, for `d = 2`.
pub(crate) fn bounded_search(
    h: &LocalPresentation,
    h2: &LocalPresentation,
    coe: bool,
    bound: i64,
    all_witnesses: bool,
) -> Vec<RatMat> {
    let constraints: Vec<(Vec<Int>, Vec<Int>)> = h
        .support()
        .into_iter()
        .filter_map(|p| Some((line_of(h, p)?, line_of(h2, p)?)))
        .collect();
    let max_m = if coe { bound } else { 1 };
    let mut found = Vec::new();
    for m in 1..=max_m {
        let m2 = m * m;
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    for t in [m2, -m2] {
                        let ds: Vec<i64> = if a != 0 {
                            let num = t + b * c;
                            if num % a != 0 || (num / a).abs() > bound {
                                continue;
                            }
                            vec![num / a]
                        } else if -b * c == t {
                            (-bound..=bound).collect()
                        } else {
                            continue;
                        };
                        for d in ds {
                            let entries = [a, b, c, d];
                            if m > 1 && gcd_all(&[a, b, c, d, m]) > 1 {
                                continue;
                            }
                            if !respects_lines(&entries, &constraints) {
                                continue;
                            }
                            let alpha = RatMat::from_fn(2, 2, |i, j| {
                                Rat::new(entries[2 * i + j].into(), m.into())
                            });
                            if is_witness(&alpha, h, h2, !coe) {
                                found.push(alpha);
                                if !all_witnesses {
                                    return found;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    sort_witnesses(found)
}
