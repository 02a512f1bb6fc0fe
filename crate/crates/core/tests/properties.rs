use num_traits::{One, Zero};
use odometer_core::arith::{rat, Int, Rat};
use odometer_core::classify::{decide, Answer, Relation, SearchOptions};
use odometer_core::cohomology::{build_cocycle, Cocycle1};
use odometer_core::dsl::{canonical_text, parse_group};
use odometer_core::hgroup::{inverted, Component, HGroupPresentation, LocalPresentation};
use odometer_core::linalg::{index, snf, IntMat, Lattice, RatMat};
use odometer_core::odometer::{FiniteOdometer, OdometerTower};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn rat_matrix(d: usize) -> impl Strategy<Value = RatMat> {
    (
        prop::collection::vec(-6i64..=6, d * d),
        prop::collection::vec(1i64..=6, d * d),
    )
        .prop_map(move |(n, q)| RatMat::from_fn(d, d, |i, j| rat(n[i * d + j], q[i * d + j])))
        .prop_filter("nonsingular", |m| m.rank() == m.rows())
}

fn lattice(d: usize) -> impl Strategy<Value = Lattice> {
    rat_matrix(d).prop_map(|m| Lattice::new(&m).expect("nonsingular"))
}

fn int_sublattice() -> impl Strategy<Value = Lattice> {
    (1i64..=12, 1i64..=12, 0i64..12).prop_map(|(a, d, b)| {
        Lattice::from_int(&IntMat::from_i64(&[&[a, 0], &[b % d, d]])).expect("nonsingular")
    })
}

fn component() -> impl Strategy<Value = Component> {
    prop_oneof![
        Just(Component::Z),
        Just(inverted(2)),
        Just(inverted(3)),
        Just(inverted(5)),
        Just(inverted(6)),
        Just(inverted(10)),
    ]
}

/// `oplus(c1, c2)`, optionally plus `Z v` for a vector with small prime
/// power denominators.
fn group2() -> impl Strategy<Value = LocalPresentation> {
    (
        component(),
        component(),
        prop::option::of((
            -3i64..=3,
            prop_oneof![Just(1i64), Just(5), Just(7), Just(25)],
            -3i64..=3,
        )),
    )
        .prop_map(|(a, b, g)| {
            let h = LocalPresentation::oplus(&[a, b]);
            match g {
                Some((x, q, y)) => h
                    .sum(&LocalPresentation::generated_by(&[rat(x, q), rat(y, q)]))
                    .unwrap(),
                None => h,
            }
        })
}

fn free_group2() -> impl Strategy<Value = LocalPresentation> {
    group2().prop_filter("free", LocalPresentation::is_free)
}

fn group1() -> impl Strategy<Value = LocalPresentation> {
    (
        prop::sample::subsequence(vec![2i64, 3, 5, 7], 1..=3),
        prop::option::of((prop_oneof![Just(2i64), Just(3), Just(5), Just(7)], 1u32..=2)),
    )
        .prop_map(|(inv, fin)| {
            let comps: Vec<Component> = vec![inverted(inv.iter().product())];
            let h = LocalPresentation::oplus(&comps);
            match fin {
                Some((p, k)) => {
                    let v = [Rat::new(Int::one(), Int::from(p).pow(k))];
                    h.sum(&LocalPresentation::generated_by(&v)).unwrap()
                }
                None => h,
            }
        })
}

fn unimodular() -> impl Strategy<Value = RatMat> {
    prop::collection::vec((0usize..4, -3i64..=3), 1..6).prop_map(|ops| {
        let mut m = RatMat::identity(2);
        for (kind, k) in ops {
            let e = match kind {
                0 => RatMat::from_i64(&[&[1, k], &[0, 1]]),
                1 => RatMat::from_i64(&[&[1, 0], &[k, 1]]),
                2 => RatMat::from_i64(&[&[0, 1], &[1, 0]]),
                _ => RatMat::from_i64(&[&[-1, 0], &[0, 1]]),
            };
            m = m.mul(&e);
        }
        m
    })
}

fn rat_vec(d: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-20i64..=20, 1i64..=30), d)
        .prop_map(|v| v.into_iter().map(|(n, q)| rat(n, q)).collect())
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn double_dual_is_identity(l in lattice(3)) {
        prop_assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn index_reverses_under_duality(l in lattice(2), m in lattice(2)) {
        let sub = l.intersection(&m);
        prop_assert_eq!(index(&sub, &l).unwrap(), index(&l.dual(), &sub.dual()).unwrap());
    }

    #[test]
    fn membership_ignores_basis_choice(m in rat_matrix(2), u in unimodular(), vs in prop::collection::vec(rat_vec(2), 100)) {
        let a = Lattice::new(&m).unwrap();
        let b = Lattice::from_generators(&m.mul(&u).hcat(&m)).unwrap();
        prop_assert_eq!(&a, &b);
        for v in &vs {
            prop_assert_eq!(a.contains(v), Lattice::new(&a.basis()).unwrap().contains(v));
        }
    }

    #[test]
    fn smith_factors_divide_and_keep_determinant(m in rat_matrix(3)) {
        let (_, n) = m.clear_denominators();
        let s = snf(&n).unwrap();
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let prod: Int = f.iter().product();
        let det = n.det().unwrap();
        prop_assert_eq!(prod, if det < Int::zero() { -det } else { det });
    }

    #[test]
    fn canonical_text_round_trips(h in group2()) {
        let text = canonical_text(&h);
        let back = parse_group(&text).unwrap();
        prop_assert_eq!(canonical_text(&back), text);
        prop_assert_eq!(back, h);
    }

    #[test]
    fn sums_commute_and_associate(a in group2(), b in group2(), c in group2()) {
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        prop_assert_eq!(a.sum(&b).unwrap().sum(&c).unwrap(), a.sum(&b.sum(&c).unwrap()).unwrap());
    }

    #[test]
    fn tower_levels_lie_in_group(h in group2()) {
        let t = HGroupPresentation::from(h.clone()).tower(4).unwrap();
        let z = Lattice::standard(2);
        for n in 1..=4 {
            for v in t.level(n).basis().columns() {
                prop_assert!(h.contains(&v));
            }
            if n > 1 {
                prop_assert!(t.level(n - 1).is_sublattice_of(t.level(n)));
                prop_assert!(t.dual(n).is_sublattice_of(t.dual(n - 1)));
            }
            prop_assert!(t.dual(n).is_sublattice_of(&z));
            prop_assert_eq!(Rat::from_integer(t.index(n)), index(&z, t.level(n)).unwrap());
            prop_assert_eq!(index(t.dual(n), &z).unwrap(), index(&z, t.level(n)).unwrap());
        }
    }

    #[test]
    fn members_appear_in_the_tower(h in group2(), v in rat_vec(2)) {
        // Level 6 is H ∩ (1/720) Z^2.
        let t = HGroupPresentation::from(h.clone()).tower(6).unwrap();
        let top = t.level(6);
        if top.contains(&v) {
            prop_assert!(h.contains(&v));
        }
        if h.contains(&v) && v.iter().all(|x| (Int::from(720) % x.denom()).is_zero()) {
            prop_assert!(top.contains(&v));
        }
    }

    #[test]
    fn superindex_adds_over_direct_sums(a in group2(), b in group1()) {
        prop_assert_eq!(a.direct_sum(&b).superindex(), &a.superindex() + &b.superindex());
    }

    #[test]
    fn unimodular_round_trip(h in group2(), u in unimodular()) {
        let inv = u.inverse().unwrap();
        prop_assert_eq!(h.apply_matrix(&inv).unwrap().apply_matrix(&u).unwrap(), h);
    }

    #[test]
    fn action_composes(g in int_sublattice(), k in prop::collection::vec(-20i64..=20, 2),
                       l in prop::collection::vec(-20i64..=20, 2), x in prop::collection::vec(-50i64..=50, 2)) {
        let f = FiniteOdometer::new(&g).unwrap();
        let kl: Vec<i64> = k.iter().zip(&l).map(|(a, b)| a + b).collect();
        prop_assert_eq!(f.act(&kl, &x), f.act(&k, &f.act(&l, &x)));
        let mut image: Vec<usize> = f.reps().map(|r| f.index_of(&f.act(&k, &r))).collect();
        image.sort_unstable();
        prop_assert_eq!(image, (0..f.card()).collect::<Vec<_>>());
    }

    #[test]
    fn metric_is_symmetric_and_satisfies_triangle(h in free_group2(), seed in any::<u64>()) {
        let t = OdometerTower::new(HGroupPresentation::from(h).tower(4).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let (x, y, z) = (t.random_point(&mut rng), t.random_point(&mut rng), t.random_point(&mut rng));
            prop_assert_eq!(t.metric(&x, &y), t.metric(&y, &x));
            prop_assert!(t.metric(&x, &z) <= t.metric(&x, &y) + t.metric(&y, &z));
            prop_assert_eq!(t.metric(&x, &x), Rat::zero());
        }
    }

    #[test]
    fn trace_is_additive_and_kills_coboundaries(g in int_sublattice(), c in prop::collection::vec(-5i64..=5, 2),
                                                 seed in any::<u64>()) {
        let f = FiniteOdometer::new(&g).unwrap();
        let dual = g.dual().basis();
        let h1 = dual.mul_vec(&[rat(c[0], 1), rat(c[1], 1)]);
        let h2 = dual.col(0);
        let t1 = build_cocycle(&g, &h1, None).unwrap();
        let t2 = build_cocycle(&g, &h2, None).unwrap();
        let sum: Vec<Rat> = t1.tau1().iter().zip(t2.tau1()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t1.add(&t2).tau1(), sum);
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise: Vec<i64> = (0..f.card()).map(|_| rng.gen_range(-9..=9)).collect();
        prop_assert!(Cocycle1::coboundary(&f, &noise).tau1().iter().all(Zero::is_zero));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn verdicts_revalidate_and_respect_the_chain(a in free_group2(), b in free_group2(), u in unimodular()) {
        // Mix unrelated pairs with pairs related by a unimodular map.
        for (h, h2) in [(a.clone(), b), (a.clone(), a.apply_matrix(&u).unwrap())] {
            let mut answers = Vec::new();
            for r in Relation::ALL {
                let v = decide(r, &h, &h2, &SearchOptions::default()).unwrap();
                prop_assert!(v.revalidate(&h, &h2), "{} {:?}", r, v);
                answers.push(v.answer);
            }
            if let Some(i) = answers.iter().position(|x| *x == Answer::Yes) {
                prop_assert!(answers[i..].iter().all(|x| *x == Answer::Yes), "{:?}", answers);
            }
        }
    }

    #[test]
    fn line_groups_collapse(a in group1(), b in group1()) {
        let answers: Vec<Answer> = Relation::ALL
            .iter()
            .map(|&r| decide(r, &a, &b, &SearchOptions::default()).unwrap().answer)
            .collect();
        prop_assert!(answers.iter().all(|x| *x == answers[0]));
        prop_assert_eq!(answers[0] == Answer::Yes, a.superindex() == b.superindex());
    }
}
