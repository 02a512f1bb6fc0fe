//! One PASS/FAIL line per acceptance criterion. Each criterion passes only
//! if the library suite passes it and an oracle written here agrees.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::{One, ToPrimitive, Zero};
use odometer_core::arith::{rat, Int, Rat};
use odometer_core::classify::{decide, Answer, Relation, SearchOptions};
use odometer_core::cohomology::{
    alpha_map, build_cocycle, coinvariants, torsion_free_check, Cocycle1,
};
use odometer_core::dsl::parse_group;
use odometer_core::hgroup::{HGroupPresentation, LocalPresentation, Tower};
use odometer_core::linalg::{dot, IntMat, Lattice, RatMat};
use odometer_core::odometer::{FiniteOdometer, OdometerTower};
use odometer_core::rigid::{gallery, RigidProgram};
use odometer_core::suite::{
    all_sublattices, random_dual_vector, random_sublattice, run_criterion, DEFAULT_SEED,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(name: &str) -> LocalPresentation {
    gallery()
        .get(name)
        .unwrap_or_else(|| panic!("no group {name}"))
        .clone()
}

/// Elements `e1/p^k`, `e2/q^k` and the extra generators of a two-factor
/// presentation, enough to pin down the image of the group.
fn sample(gens: &[Vec<Rat>], primes: (i64, i64)) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = gens.to_vec();
    for k in 0..6u32 {
        out.push(vec![rat(1, primes.0.pow(k)), Rat::zero()]);
        out.push(vec![Rat::zero(), rat(1, primes.1.pow(k))]);
    }
    out
}

fn maps_into(a: &RatMat, from: &[Vec<Rat>], to: &LocalPresentation) -> bool {
    from.iter().all(|v| to.contains(&a.mul_vec(v)))
}

fn is_prime_by_division(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn oracle_1() -> bool {
    let swap = RatMat::from_i64(&[&[0, 1], &[1, 0]]);
    let s1a = sample(&[], (2, 3));
    let s1b = sample(&[], (3, 2));
    let item1 = maps_into(&swap, &s1a, &g("class35_1b"))
        && maps_into(&swap, &s1b, &g("class35_1a"))
        && !g("class35_1b").contains(&[rat(1, 2), Rat::zero()]);

    let alpha = RatMat::diagonal(&[rat(1, 5), rat(5, 1)]);
    let inv = alpha.inverse().unwrap();
    let s2a = sample(&[vec![Rat::zero(), rat(1, 5)]], (2, 3));
    let s2b = sample(&[vec![rat(1, 5), Rat::zero()]], (2, 3));
    let item2 = maps_into(&alpha, &s2a, &g("class35_2b"))
        && maps_into(&inv, &s2b, &g("class35_2a"))
        && alpha.det().unwrap() == Rat::one()
        && g("class35_2a").contains(&[Rat::zero(), rat(1, 5)])
        && !g("class35_2b").contains(&[Rat::zero(), rat(1, 5)]);

    let item3 = g("class35_3a").superindex().to_string() == "2^inf*3^inf*5^inf"
        && g("class35_3b").superindex().to_string() == "2^inf*3^inf*5^inf"
        // 5 is divisible along e2 in 3a and along e1 in 3b while 3 stays on e2.
        && g("class35_3a").contains(&[Rat::zero(), rat(1, 125)])
        && g("class35_3b").contains(&[rat(1, 125), Rat::zero()])
        && g("class35_3b").contains(&[Rat::zero(), rat(1, 27)]);

    let item4 = g("class35_4b").dim() == 1
        && g("class35_4b").contains(&[rat(1, 6 * 6 * 6)])
        && g("class35_4a").superindex() == g("class35_4b").superindex();
    item1 && item2 && item3 && item4
}

/// Every `A/m` with `|A_ij| ≤ 20`, `1 ≤ m ≤ 20` and `det A = ±m^2` that maps
/// the sample of one Fuchs group into the other and back.
fn oracle_2() -> bool {
    let h = g("class11_fuchs");
    let h2 = g("class11_fuchs_swapped");
    let sh = sample(&[vec![rat(1, 5), rat(1, 5)]], (2, 3));
    let sh2 = sample(&[vec![rat(1, 5), rat(1, 5)]], (3, 2));
    let mut found = Vec::new();
    for m in 1..=20i64 {
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                for c in -20i64..=20 {
                    for target in [m * m, -m * m] {
                        // a d - b c = target
                        let num = target + b * c;
                        if a == 0 {
                            if num != 0 {
                                continue;
                            }
                            for d in -20i64..=20 {
                                found.extend(check(a, b, c, d, m, &sh, &sh2, &h, &h2));
                            }
                        } else if num % a == 0 && (num / a).abs() <= 20 {
                            found.extend(check(a, b, c, num / a, m, &sh, &sh2, &h, &h2));
                        }
                    }
                }
            }
        }
    }
    found.sort();
    found.dedup();
    found == [(0, -1, -1, 0, 1), (0, 1, 1, 0, 1)]
}

#[allow(clippy::too_many_arguments)]
fn check(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    m: i64,
    sh: &[Vec<Rat>],
    sh2: &[Vec<Rat>],
    h: &LocalPresentation,
    h2: &LocalPresentation,
) -> Option<(i64, i64, i64, i64, i64)> {
    // Reduce to lowest terms so each rational matrix is counted once.
    let gcd = [a, b, c, d, m]
        .iter()
        .fold(0i64, |x, &y| num_integer::gcd(x, y));
    if gcd != 1 {
        return None;
    }
    let alpha = RatMat::from_i64(&[&[a, b], &[c, d]]).scale(&rat(1, m));
    let inv = alpha.inverse().ok()?;
    (maps_into(&alpha, sh, h2) && maps_into(&inv, sh2, h)).then_some((a, b, c, d, m))
}

fn corpus(seed: u64, id: u64) -> Vec<(Lattice, Vec<Rat>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x5eed << 8) ^ id);
    (0..100)
        .map(|i| {
            let l = random_sublattice(&mut rng, 200, i % 5 == 0);
            let h = random_dual_vector(&l, &mut rng);
            (l, h)
        })
        .collect()
}

/// The average of `θ(x, e_i)` over the cosets.
fn average_trace(theta: &Cocycle1, f: &FiniteOdometer) -> Vec<Rat> {
    let d = f.dim();
    (0..d)
        .map(|i| {
            let e: Vec<i64> = (0..d).map(|j| (i == j) as i64).collect();
            let total: i64 = f.reps().map(|x| theta.eval(&x, &e)).sum();
            rat(total, f.card() as i64)
        })
        .collect()
}

fn int_columns(l: &Lattice) -> Vec<Vec<i64>> {
    l.basis()
        .columns()
        .into_iter()
        .map(|c| c.iter().map(|x| x.to_integer().to_i64().unwrap()).collect())
        .collect()
}

fn oracle_3() -> bool {
    corpus(DEFAULT_SEED, 3).iter().all(|(l, h)| {
        let f = FiniteOdometer::new(l).unwrap();
        average_trace(&build_cocycle(l, h, None).unwrap(), &f) == *h
    })
}

/// `θ(0, n) = <h, n>` on a basis of the lattice, and a random coboundary
/// added to a cocycle is recovered pointwise.
fn oracle_4() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    corpus(DEFAULT_SEED, 4).iter().take(50).all(|(l, h)| {
        let f = FiniteOdometer::new(l).unwrap();
        let theta = build_cocycle(l, h, None).unwrap();
        let zero = vec![0i64; 2];
        let hom_ok = int_columns(l).iter().all(|n| {
            let nr: Vec<Rat> = n.iter().map(|&x| rat(x, 1)).collect();
            Rat::from_integer(theta.eval(&zero, n).into()) == dot(h, &nr)
        });
        let noise: Vec<i64> = (0..f.card()).map(|_| rng.gen_range(-9..=9)).collect();
        let eta = theta.add(&Cocycle1::coboundary(&f, &noise));
        let diff = eta.sub(&theta);
        let solved = diff.solve_coboundary().is_some_and(|s| {
            f.reps().all(|x| {
                (0..2).all(|i| {
                    let e: Vec<i64> = (0..2).map(|j| (i == j) as i64).collect();
                    let y = f.act(&e, &x);
                    diff.eval(&x, &e) == s[f.index_of(&y)] - s[f.index_of(&x)]
                })
            })
        });
        hom_ok && solved && alpha_map(&eta) == *h
    })
}

/// The number of lattices `Z^2 ⊆ K` with `[K:Z^2] = n` is the divisor sum
/// of `n`, and characters of `K/Z^2` number exactly the index.
fn oracle_5() -> bool {
    let sigma: usize = (1..=50usize)
        .map(|n| (1..=n).filter(|d| n % d == 0).sum::<usize>())
        .sum();
    let ls = all_sublattices(50);
    ls.len() == sigma
        && ls.iter().all(|l| {
            let k = l.dual();
            FiniteOdometer::new(l).unwrap().card() as i64
                == odometer_core::linalg::index(&Lattice::standard(2), &k)
                    .unwrap()
                    .to_integer()
                    .to_i64()
                    .unwrap()
        })
}

/// Exponents read off the chain `H ∩ s^{-n} Z^2`, written here from scratch,
/// against values known for the gallery.
fn oracle_6() -> bool {
    let expected: BTreeMap<&str, &str> = [
        ("class11_fuchs", "2^inf*3^inf*5^1"),
        ("class11_fuchs_swapped", "2^inf*3^inf*5^1"),
        ("class35_1a", "2^inf*3^inf"),
        ("class35_1b", "2^inf*3^inf"),
        ("class35_2a", "2^inf*3^inf*5^1"),
        ("class35_2b", "2^inf*3^inf*5^1"),
        ("class35_3a", "2^inf*3^inf*5^inf"),
        ("class35_3b", "2^inf*3^inf*5^inf"),
        ("class35_4a", "2^inf*3^inf"),
        ("class35_4b", "2^inf*3^inf"),
    ]
    .into_iter()
    .collect();
    let gal = gallery();
    let ok = gal.names().all(|name| {
        let h = gal.get(name).unwrap();
        let s: Int = [2u32, 3, 5].iter().map(|&p| Int::from(p)).product();
        let chain: Vec<Int> = (1..=6u32).map(|k| s.pow(k)).collect();
        let t = Tower::from_chain(h, &chain).unwrap();
        let mut parts = Vec::new();
        for p in [2u64, 3, 5] {
            let v = |n: usize| {
                let mut x = t.index(n);
                let mut e = 0;
                while (&x % p).is_zero() {
                    x /= p;
                    e += 1;
                }
                e
            };
            match (v(5), v(6)) {
                (_, 0) => {}
                (a, b) if b > a => parts.push(format!("{p}^inf")),
                (_, b) => parts.push(format!("{p}^{b}")),
            }
        }
        let coinv = coinvariants(&HGroupPresentation::from(h.clone()), 4).unwrap();
        parts.join("*") == expected[name] && coinv.to_string() == expected[name]
    });
    ok
}

/// Random line groups with recorded exponents: all four relations hold
/// exactly when the exponent maps agree.
fn oracle_7() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 7);
    let primes = [2i64, 3, 5, 7];
    let draw = |rng: &mut ChaCha8Rng| -> (Vec<Option<u32>>, LocalPresentation) {
        loop {
            // None means the prime is inverted, Some(k) a fixed power.
            let exps: Vec<Option<u32>> = primes
                .iter()
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        None
                    } else {
                        Some(rng.gen_range(0..=2))
                    }
                })
                .collect();
            if exps.iter().all(Option::is_some) {
                continue;
            }
            let mut text = String::new();
            let inv: i64 = primes
                .iter()
                .zip(&exps)
                .filter(|(_, e)| e.is_none())
                .map(|(p, _)| p)
                .product();
            text.push_str(&format!("oplus(Z[1/{inv}])"));
            for (p, e) in primes.iter().zip(&exps) {
                if let Some(k) = e.filter(|&k| k > 0) {
                    text.push_str(&format!(" + gen(1/{})", p.pow(k)));
                }
            }
            return (exps, parse_group(&text).unwrap());
        }
    };
    let pool: Vec<_> = (0..6).map(|_| draw(&mut rng)).collect();
    (0..50).all(|_| {
        let (ea, a) = &pool[rng.gen_range(0..pool.len())];
        let (eb, b) = &pool[rng.gen_range(0..pool.len())];
        let want = if ea == eb { Answer::Yes } else { Answer::No };
        Relation::ALL
            .iter()
            .all(|&r| decide(r, a, b, &SearchOptions::default()).unwrap().answer == want)
    })
}

fn oracle_8() -> bool {
    let gal = gallery();
    gal.expectations.iter().all(|e| {
        decide(
            e.relation,
            gal.get(&e.left).unwrap(),
            gal.get(&e.right).unwrap(),
            &SearchOptions::default(),
        )
        .unwrap()
        .answer
            == e.answer
    })
}

fn oracle_9() -> bool {
    ["class35_1a", "class35_2a", "class11_fuchs"]
        .iter()
        .all(|name| {
            let h = HGroupPresentation::from(g(name));
            let t = OdometerTower::new(h.tower(4).unwrap()).unwrap();
            (1..=4).all(|n| {
                let f = t.level(n);
                let want = Rat::new(Int::one(), t.tower().index(n));
                f.card() as i64 == t.tower().index(n).to_i64().unwrap()
                    && f.reps().all(|x| t.measure_cylinder(n, &x).unwrap() == want)
            })
        })
}

/// A cocycle is a coboundary iff it vanishes on a basis of the lattice at
/// the base point; `kθ` then vanishes iff `θ` does.
fn oracle_10() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 10);
    (1..=60i64).all(|n| {
        let divisors: Vec<i64> = (1..=n).filter(|k| n % k == 0).collect();
        let a = divisors[rng.gen_range(0..divisors.len())];
        let d = n / a;
        let l =
            Lattice::from_int(&IntMat::from_i64(&[&[a, 0], &[rng.gen_range(0..d), d]])).unwrap();
        let f = FiniteOdometer::new(&l).unwrap();
        let basis = int_columns(&l);
        let zero = vec![0i64; 2];
        (0..20).all(|_| {
            let c: Vec<i64> = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
            let noise: Vec<i64> = (0..f.card()).map(|_| rng.gen_range(-9..=9)).collect();
            let mut theta = Cocycle1::coboundary(&f, &noise)
                .add(&Cocycle1::epsilon(&f, 0).scale(c[0]))
                .add(&Cocycle1::epsilon(&f, 1).scale(c[1]));
            if rng.gen_bool(0.5) {
                let h: Vec<Rat> = c.iter().map(|&x| rat(x, 1)).collect();
                theta = theta.sub(&build_cocycle(&l, &h, None).unwrap());
            }
            let vanishes = |t: &Cocycle1| basis.iter().all(|b| t.eval(&zero, b) == 0);
            let k = rng.gen_range(2..=5);
            theta.is_coboundary() == vanishes(&theta)
                && theta.scale(k).is_coboundary() == vanishes(&theta)
        }) && torsion_free_check(&f, 20, &mut rng).unwrap()
    })
}

fn oracle_11() -> bool {
    let p = RigidProgram::with_levels(3).unwrap();
    let want = [
        (3, [[3, 1], [1, 4]], 11u64),
        (10, [[10, 1], [1, 11]], 109),
        (180, [[180, 1], [1, 181]], 32579),
    ];
    want.iter().enumerate().all(|(i, (k, m, det))| {
        let s = p.step(i + 1);
        s.constant == Int::from(*k)
            && s.matrix == IntMat::from_i64(&[&m[0], &m[1]])
            && s.det == Int::from(*det)
            && is_prime_by_division(*det)
    }) && {
        // Dual of H_3 is spanned by the columns of α1α2α3; no nonzero
        // element has l1 norm at most 3.
        let prod = p.product(3).unwrap();
        let cols: Vec<Vec<i64>> = prod
            .columns()
            .into_iter()
            .map(|c| c.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        let mut ok = true;
        for x in -40i64..=40 {
            for y in -40i64..=40 {
                if (x, y) == (0, 0) {
                    continue;
                }
                let v = [
                    x * cols[0][0] + y * cols[1][0],
                    x * cols[0][1] + y * cols[1][1],
                ];
                ok &= v[0].abs() + v[1].abs() > 3;
            }
        }
        ok
    }
}

#[test]
fn acceptance_criteria() {
    let oracles: [fn() -> bool; 11] = [
        oracle_1, oracle_2, oracle_3, oracle_4, oracle_5, oracle_6, oracle_7, oracle_8, oracle_9,
        oracle_10, oracle_11,
    ];
    let mut failed = Vec::new();
    for (i, oracle) in oracles.iter().enumerate() {
        let r = run_criterion(i + 1, DEFAULT_SEED);
        let agreed = oracle();
        let passed = r.passed && agreed;
        // Written to the handle directly so the lines survive output capture.
        let _ = writeln!(
            std::io::stdout().lock(),
            "{} criterion {} ({}): suite={} oracle={} {}",
            if passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.passed,
            agreed,
            r.detail
        );
        if !passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
