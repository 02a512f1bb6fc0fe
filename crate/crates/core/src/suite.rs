//! The acceptance suite behind `verify`: eleven exact checks over
//! the example groups, seeded random lattices and the rigid construction.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{valuation_int, Int, Rat};
use crate::classify::{bounded_witnesses, decide, Answer, Certificate, Relation, SearchOptions};
use crate::cohomology::{
    alpha_map, build_cocycle, coinvariants, torsion_free_check, Cocycle1, GeneratorPair,
};
use crate::error::Result;
use crate::hgroup::{inverted, HGroupPresentation, LocalPresentation, Tower};
use crate::linalg::{Exponent, IntMat, Lattice, RatMat, Supernatural};
use crate::odometer::{commuting_square_check, duality_check, FiniteOdometer, OdometerTower};
use crate::rigid::{
    dual_ball_trivial, gallery, verify_chain, verify_cyclicity, verify_exercises, RigidProgram,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [&str; 11] = [
    "classification table",
    "swap witnesses",
    "trace exactness",
    "alpha round trip",
    "duality",
    "orbit-equivalence invariant",
    "one-dimensional collapse",
    "implication chain",
    "measure, metric, minimality",
    "torsion-freeness",
    "rigid construction",
];

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, seed: u64) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let outcome = match id {
        1 => classification_table(),
        2 => swap_witnesses(),
        3 => trace_exactness(&mut rng),
        4 => alpha_round_trip(&mut rng),
        5 => duality(&mut rng),
        6 => orbit_equivalence_invariant(),
        7 => one_dimensional_collapse(&mut rng),
        8 => implication_chain(),
        9 => measure_metric_minimality(&mut rng),
        10 => torsion_freeness(&mut rng),
        11 => rigid_construction(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult {
        id,
        name: CRITERIA
            .get(id.wrapping_sub(1))
            .copied()
            .unwrap_or("unknown"),
        passed,
        detail,
    }
}

pub fn run_suite(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len())
        .map(|id| run_criterion(id, seed))
        .collect()
}

type Check = Result<(bool, String)>;

fn swap() -> RatMat {
    RatMat::from_i64(&[&[0, 1], &[1, 0]])
}

fn classification_table() -> Check {
    let g = gallery();
    let get = |n: &str| g.get(n).expect("gallery name").clone();
    let opts = SearchOptions::default();
    let (a1, b1) = (get("class35_1a"), get("class35_1b"));
    let iso1 = decide(Relation::Iso, &a1, &b1, &opts)?;
    let conj1 = decide(Relation::Conj, &a1, &b1, &opts)?;
    let item1 =
        iso1.answer == Answer::Yes && iso1.witness == Some(swap()) && conj1.answer == Answer::No;

    let (a2, b2) = (get("class35_2a"), get("class35_2b"));
    let coe2 = decide(Relation::Coe, &a2, &b2, &opts)?;
    let iso2 = decide(Relation::Iso, &a2, &b2, &opts)?;
    let diag = RatMat::diagonal(&[Rat::new(1.into(), 5.into()), Rat::from_integer(5.into())]);
    let item2 = coe2.answer == Answer::Yes
        && coe2.witness.as_ref() == Some(&diag)
        && diag.det()? == Rat::one()
        && iso2.answer == Answer::No;

    let (a3, b3) = (get("class35_3a"), get("class35_3b"));
    let oe3 = decide(Relation::Oe, &a3, &b3, &opts)?;
    let coe3 = decide(Relation::Coe, &a3, &b3, &opts)?;
    let item3 = oe3.answer == Answer::Yes
        && coe3.answer == Answer::No
        && matches!(coe3.certificate, Some(Certificate::LineConflict { .. }))
        && coe3.revalidate(&a3, &b3);

    let (a4, b4) = (get("class35_4a"), get("class35_4b"));
    let oe4 = decide(Relation::Oe, &a4, &b4, &opts)?;
    let item4 = oe4.answer == Answer::Yes && a4.dim() == 2 && b4.dim() == 1;

    let cert = coe3.certificate.map(|c| c.to_string()).unwrap_or_default();
    Ok((
        item1 && item2 && item3 && item4,
        format!("items=[{item1},{item2},{item3},{item4}] item3_certificate=\"{cert}\""),
    ))
}

fn swap_witnesses() -> Check {
    let g = gallery();
    let h = g.get("class11_fuchs").expect("fuchs");
    let h2 = g.get("class11_fuchs_swapped").expect("swapped");
    let mut expected = vec![swap(), swap().scale(&-Rat::one())];
    expected.sort_by_key(|w| w.to_string());
    let opts = SearchOptions {
        bound: 20,
        all_witnesses: true,
    };
    let mut ok = true;
    let mut detail = Vec::new();
    for r in [Relation::Iso, Relation::Coe] {
        let decided = decide(r, h, h2, &opts)?.witnesses;
        let searched = bounded_witnesses(r, h, h2, 20)?;
        let det_plus = searched
            .iter()
            .any(|w| w.det().is_ok_and(|d| d == Rat::one()));
        ok &= decided == expected && searched == expected && !det_plus;
        detail.push(format!(
            "{r}:decided={} searched={}",
            decided.len(),
            searched.len()
        ));
    }
    Ok((ok, detail.join(" ")))
}

/// A sublattice of `Z^2` with index at most `max_index`, in Hermite form
/// with columns `(a, b)` and `(0, d)`; `zero_b` forces `b = 0`.
pub fn random_sublattice(rng: &mut impl Rng, max_index: i64, zero_b: bool) -> Lattice {
    loop {
        let n = rng.gen_range(1..=max_index);
        let divisors: Vec<i64> = (1..=n).filter(|k| n % k == 0).collect();
        let a = *divisors.choose(rng).expect("n has divisors");
        let d = n / a;
        if !zero_b && d == 1 {
            continue;
        }
        let b = if zero_b { 0 } else { rng.gen_range(1..d) };
        return Lattice::from_int(&IntMat::from_i64(&[&[a, 0], &[b, d]])).expect("nonsingular");
    }
}

/// A random element of `G*`.
pub fn random_dual_vector(g: &Lattice, rng: &mut impl Rng) -> Vec<Rat> {
    let dual = g.dual().basis();
    let coeffs: Vec<Rat> = (0..g.dim())
        .map(|_| Rat::from_integer(rng.gen_range(-6..=6).into()))
        .collect();
    dual.mul_vec(&coeffs)
}

fn cocycle_corpus(rng: &mut impl Rng) -> Vec<(Lattice, Vec<Rat>)> {
    (0..100)
        .map(|i| {
            let g = random_sublattice(rng, 200, i % 4 == 0);
            let h = random_dual_vector(&g, rng);
            (g, h)
        })
        .collect()
}

fn trace_exactness(rng: &mut impl Rng) -> Check {
    let corpus = cocycle_corpus(rng);
    let (mut zero_b, mut pos_b, mut ok) = (0, 0, true);
    for (g, h) in &corpus {
        let pair = GeneratorPair::from_hermite(g)?;
        if pair.first[1] == 0 {
            zero_b += 1;
        } else {
            pos_b += 1;
        }
        ok &= build_cocycle(g, h, None)?.tau1() == *h;
    }
    Ok((
        ok && zero_b >= 10 && pos_b >= 10,
        format!(
            "instances={} b_zero={zero_b} b_positive={pos_b}",
            corpus.len()
        ),
    ))
}

fn alpha_round_trip(rng: &mut impl Rng) -> Check {
    let corpus = cocycle_corpus(rng);
    let mut ok = true;
    for (g, h) in &corpus {
        ok &= alpha_map(&build_cocycle(g, h, None)?) == *h;
    }
    let mut solved = 0;
    for (g, h) in corpus.iter().take(50) {
        let pair = GeneratorPair::from_hermite(g)?;
        let [a, b] = pair.first;
        let [_, d] = pair.second;
        let other = GeneratorPair {
            first: [a, b],
            second: [a, b + d],
        };
        let f = FiniteOdometer::new(g)?;
        let noise: Vec<i64> = (0..f.card()).map(|_| rng.gen_range(-9..=9)).collect();
        let t1 = build_cocycle(g, h, None)?;
        let t2 = build_cocycle(g, h, Some(other))?.add(&Cocycle1::coboundary(&f, &noise));
        if alpha_map(&t1) != alpha_map(&t2) {
            ok = false;
            continue;
        }
        let diff = t2.sub(&t1);
        match diff.solve_coboundary() {
            Some(sol) if Cocycle1::coboundary(&f, &sol) == diff => solved += 1,
            _ => ok = false,
        }
    }
    Ok((
        ok && solved == 50,
        format!("round_trips={} coboundaries_solved={solved}", corpus.len()),
    ))
}

/// Every sublattice of `Z^2` of index at most `max_index`.
pub fn all_sublattices(max_index: i64) -> Vec<Lattice> {
    let mut out = Vec::new();
    for a in 1..=max_index {
        for d in 1..=max_index / a {
            for b in 0..d {
                out.push(
                    Lattice::from_int(&IntMat::from_i64(&[&[a, 0], &[b, d]])).expect("nonsingular"),
                );
            }
        }
    }
    out
}

fn duality(rng: &mut impl Rng) -> Check {
    let ks: Vec<Lattice> = all_sublattices(50).iter().map(Lattice::dual).collect();
    let mut ok = true;
    for k in &ks {
        ok &= duality_check(k, 3, rng)?;
    }
    let mut squares = 0;
    while squares < 20 {
        let k2 = ks.choose(rng).expect("nonempty");
        let other = ks.choose(rng).expect("nonempty");
        let k1 = k2.intersection(other);
        ok &= commuting_square_check(&k1, k2)?;
        squares += 1;
    }
    Ok((ok, format!("lattices={} squares={squares}", ks.len())))
}

/// Superindex read off the chain `H ∩ s^{-n} Z^d`, `n ≤ depth`, with `s`
/// the product of the support primes: the divisors of the indices, with
/// exponent ∞ where the last step still grows.
pub fn tower_superindex(h: &LocalPresentation, depth: usize) -> Result<Supernatural> {
    let s: Int = h.support().iter().map(|&p| Int::from(p)).product();
    let chain: Vec<Int> = (1..=depth as u32).map(|k| s.pow(k)).collect();
    let tower = Tower::from_chain(h, &chain)?;
    let mut out = Supernatural::one();
    for p in h.support() {
        let v = |n: usize| valuation_int(&tower.index(n), p);
        let top = v(depth);
        let grows = depth >= 2 && top > v(depth - 1);
        if top > 0 {
            out.set(
                p,
                if grows {
                    Exponent::Infinite
                } else {
                    Exponent::Finite(top)
                },
            );
        }
    }
    Ok(out)
}

fn orbit_equivalence_invariant() -> Check {
    let g = gallery();
    let mut ok = true;
    let mut detail = Vec::new();
    for name in g.names() {
        let h = g.get(name).expect("listed");
        let hp: HGroupPresentation = h.clone().into();
        let s = h.superindex();
        let c = coinvariants(&hp, 4)?;
        let t = tower_superindex(h, 6)?;
        // Divisors seen along the factorial tower belong to the superindex.
        let fact = hp.tower(6)?;
        let sound = s.divisible_by(&fact.index(6));
        ok &= c == s && t == s && sound;
        detail.push(format!("{name}={s}"));
    }
    Ok((ok, detail.join(" ")))
}

fn random_line_group(rng: &mut impl Rng) -> LocalPresentation {
    let primes = [2i64, 3, 5, 7];
    loop {
        let mut h = LocalPresentation::standard(1);
        for &p in &primes {
            match rng.gen_range(0..4) {
                0 => {
                    h = h
                        .sum(&LocalPresentation::oplus(&[inverted(p)]))
                        .expect("d = 1")
                }
                1 => {
                    let k = rng.gen_range(1..=2u32);
                    let v = [Rat::new(Int::one(), Int::from(p).pow(k))];
                    h = h.sum(&LocalPresentation::generated_by(&v)).expect("d = 1");
                }
                _ => {}
            }
        }
        if h.is_free() {
            return h;
        }
    }
}

fn one_dimensional_collapse(rng: &mut impl Rng) -> Check {
    let pool: Vec<LocalPresentation> = (0..6).map(|_| random_line_group(rng)).collect();
    let (mut ok, mut equal_pairs) = (true, 0);
    for _ in 0..50 {
        let a = pool.choose(rng).expect("pool");
        let b = pool.choose(rng).expect("pool");
        let answers: Vec<Answer> = Relation::ALL
            .iter()
            .map(|&r| decide(r, a, b, &SearchOptions::default()).map(|v| v.answer))
            .collect::<Result<_>>()?;
        ok &= answers.iter().all(|x| *x == answers[0]);
        equal_pairs += (answers[0] == Answer::Yes) as usize;
    }
    Ok((ok, format!("pairs=50 yes_pairs={equal_pairs}")))
}

fn implication_chain() -> Check {
    let g = gallery();
    let names: Vec<&str> = g.names().collect();
    let (mut ok, mut pairs) = (true, 0);
    for a in &names {
        for b in &names {
            let (h, h2) = (g.get(a).expect("listed"), g.get(b).expect("listed"));
            let answers: Vec<Answer> = Relation::ALL
                .iter()
                .map(|&r| decide(r, h, h2, &SearchOptions::default()).map(|v| v.answer))
                .collect::<Result<_>>()?;
            if let Some(first_yes) = answers.iter().position(|x| *x == Answer::Yes) {
                ok &= answers[first_yes..].iter().all(|x| *x == Answer::Yes);
            }
            pairs += 1;
        }
    }
    Ok((ok, format!("pairs={pairs}")))
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    (0..d).map(|j| (i == j) as i64).collect()
}

fn measure_metric_minimality(rng: &mut impl Rng) -> Check {
    let g = gallery();
    let mut ok = true;
    for name in ["class35_1a", "class35_2a", "class11_fuchs"] {
        let h: HGroupPresentation = g.get(name).expect("listed").clone().into();
        let t = OdometerTower::new(h.tower(4)?)?;
        let d = t.dim();
        for n in 1..=t.depth() {
            let f = t.level(n);
            let mut total = Rat::zero();
            for x in f.reps() {
                let m = t.measure_cylinder(n, &x)?;
                for i in 0..d {
                    ok &= t.measure_cylinder(n, &f.act(&unit(d, i), &x))? == m;
                }
                total += m;
            }
            ok &= total == Rat::one();
            // Orbit of the zero coset under the unit steps.
            let mut seen = vec![false; f.card()];
            seen[0] = true;
            let mut queue = VecDeque::from([vec![0i64; d]]);
            while let Some(x) = queue.pop_front() {
                for i in 0..d {
                    let y = f.act(&unit(d, i), &x);
                    if !std::mem::replace(&mut seen[f.index_of(&y)], true) {
                        queue.push_back(y);
                    }
                }
            }
            ok &= seen.iter().all(|&s| s);
        }
        for _ in 0..100 {
            let x = t.random_point(rng);
            let y = t.random_point(rng);
            let k: Vec<i64> = (0..d).map(|_| rng.gen_range(-30..=30)).collect();
            ok &= t.metric(&t.act(&k, &x), &t.act(&k, &y)) == t.metric(&x, &y);
        }
    }
    Ok((ok, "groups=3 depth=4 triples=100".into()))
}

fn torsion_freeness(rng: &mut impl Rng) -> Check {
    let mut ok = true;
    let mut indices = BTreeSet::new();
    for n in 1..=60i64 {
        let divisors: Vec<i64> = (1..=n).filter(|k| n % k == 0).collect();
        let a = *divisors.choose(rng).expect("divisors");
        let d = n / a;
        let b = rng.gen_range(0..d);
        let g = Lattice::from_int(&IntMat::from_i64(&[&[a, 0], &[b, d]]))?;
        let f = FiniteOdometer::new(&g)?;
        indices.insert(f.card());
        ok &= torsion_free_check(&f, 200, rng)?;
    }
    Ok((
        ok && indices.len() == 60,
        format!("quotients={} trials=200", indices.len()),
    ))
}

fn rigid_construction() -> Check {
    let p = RigidProgram::with_levels(3)?;
    let mut ok = true;
    let mut dets = Vec::new();
    for n in 1..=3 {
        ok &= verify_chain(&p, n)?;
        ok &= verify_exercises(&p, n)?.passed();
        ok &= dual_ball_trivial(&p, n, n as i64)?;
        dets.push(p.step(n).det.to_u64().unwrap_or(0).to_string());
    }
    let mut vectors = 0;
    for x in -3i64..=3 {
        let rest = 3 - x.abs();
        for y in -rest..=rest {
            if (x, y) != (0, 0) {
                ok &= verify_cyclicity(&p, &[x, y], 3)?;
                vectors += 1;
            }
        }
    }
    Ok((
        ok,
        format!("dets=[{}] cyclic_vectors={vectors}", dets.join(",")),
    ))
}
