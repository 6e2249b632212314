//! Randomized structural invariants: ring axioms, involutions, and
//! inverse-pair identities that must hold on every input.

use num::{BigRational, One};
use proptest::prelude::*;

use cherednik::characters::{dim_irrep, fake_degree};
use cherednik::crystal::crystal;
use cherednik::kgroup::{order_sm, order_sstar};
use cherednik::params::{integral_difference, sl_act, Params};
use cherednik::perm::Perm;
use cherednik::{Charge, Kappa, LaurentPoly, Multipartition, Partition};

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..=5, 0..5).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted positive parts")
    })
}

fn multipartition_strategy(l: usize) -> impl Strategy<Value = Multipartition> {
    prop::collection::vec(partition_strategy(), l..=l)
        .prop_map(|c| Multipartition::new(c).expect("componentwise valid"))
}

fn charged_pair() -> impl Strategy<Value = (Multipartition, Charge)> {
    (1..=3usize)
        .prop_flat_map(|l| {
            (
                multipartition_strategy(l),
                prop::collection::vec(-4i64..=4, l..=l),
            )
        })
        .prop_map(|(m, s)| (m, Charge::new(s).expect("integer charge")))
}

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-9i64..=9, -5i64..=5), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (c, e)| {
                &acc + &LaurentPoly::monomial_int(c, e)
            })
    })
}

proptest! {
    #[test]
    fn laurent_multiplication_distributes(
        a in poly_strategy(),
        b in poly_strategy(),
        c in poly_strategy(),
    ) {
        let left = &(&a + &b) * &c;
        let right = &(&a * &c) + &(&b * &c);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn laurent_bar_is_a_multiplicative_involution(
        a in poly_strategy(),
        b in poly_strategy(),
    ) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn laurent_exact_division_undoes_multiplication(
        a in poly_strategy(),
        b in poly_strategy(),
    ) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.div_exact(&b), Some(a));
    }

    #[test]
    fn laurent_evaluation_is_a_ring_map(
        a in poly_strategy(),
        b in poly_strategy(),
        num in 1i64..=4,
        den in 1i64..=3,
        negative in any::<bool>(),
    ) {
        let sign = if negative { -1 } else { 1 };
        let x = BigRational::new((sign * num).into(), den.into());
        let lhs = (&a * &b).eval(&x).expect("nonzero point");
        let rhs = a.eval(&x).expect("nonzero point") * b.eval(&x).expect("nonzero point");
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partition_transpose_is_an_involution(p in partition_strategy()) {
        let t = p.transpose();
        prop_assert_eq!(t.transpose(), p.clone());
        prop_assert_eq!(t.size(), p.size());
    }

    #[test]
    fn charge_star_is_an_involution(entries in prop::collection::vec(-5i64..=5, 1..4)) {
        let s = Charge::new(entries).expect("integer charge");
        prop_assert_eq!(s.star().star(), s.clone());
        prop_assert_eq!(s.star().level(), s.level());
        prop_assert_eq!(s.star().sum(), -s.sum());
    }

    #[test]
    fn multipartition_star_is_a_size_preserving_involution(
        (m, _) in charged_pair(),
    ) {
        let star = m.star();
        prop_assert_eq!(star.level(), m.level());
        prop_assert_eq!(star.size(), m.size());
        prop_assert_eq!(star.star(), m);
    }

    #[test]
    fn starred_residues_are_negated((m, s) in charged_pair()) {
        let direct = m.residue_multiset(s.as_slice());
        let starred = m.star().residue_multiset(s.star().as_slice());
        let negated: std::collections::BTreeMap<i64, usize> =
            starred.into_iter().map(|(r, c)| (-r, c)).collect();
        prop_assert_eq!(direct, negated);
    }

    #[test]
    fn adding_then_removing_a_box_is_the_identity((m, _) in charged_pair()) {
        for b in m.addable_boxes() {
            let grown = m.with_box_added(&b).expect("addable box");
            prop_assert_eq!(grown.with_box_removed(&b), Some(m.clone()));
        }
        for b in m.removable_boxes() {
            let shrunk = m.with_box_removed(&b).expect("removable box");
            prop_assert_eq!(shrunk.with_box_added(&b), Some(m.clone()));
        }
    }

    #[test]
    fn crystal_raising_undoes_lowering((m, s) in charged_pair(), i in -2i64..=2) {
        let data = crystal(&m, &s, i);
        if let Some(lower) = data.lowered {
            let above = crystal(&lower, &s, i);
            prop_assert_eq!(above.raised, Some(m.clone()));
            prop_assert_eq!(above.eps, data.eps + 1);
            prop_assert_eq!(above.phi + 1, data.phi);
        }
        if let Some(upper) = data.raised {
            let below = crystal(&upper, &s, i);
            prop_assert_eq!(below.lowered, Some(m.clone()));
        }
    }

    #[test]
    fn fake_degree_at_one_is_the_dimension((m, _) in charged_pair()) {
        let one = BigRational::one();
        let value = fake_degree(&m).eval(&one).expect("evaluation at one");
        prop_assert_eq!(value, BigRational::from_integer(dim_irrep(&m)));
    }

    #[test]
    fn highest_weight_orders_are_strict((m, s) in charged_pair(), raw_m in prop::collection::vec(0i64..=3, 1..4)) {
        let l = s.level();
        let mut weights = raw_m;
        weights.resize(l, 0);
        prop_assert!(!order_sm(&m, &m, &s, &weights).expect("same level"));
        prop_assert!(!order_sstar(&m, &m, &s).expect("same level"));
    }

    #[test]
    fn highest_weight_orders_are_asymmetric(
        (a, s) in charged_pair(),
        seed in any::<u64>(),
    ) {
        // Draw a second label of the same level and size by mutating `a`
        // through a few box moves.
        let mut b = a.clone();
        let mut state = seed;
        for _ in 0..2 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let removable = b.removable_boxes();
            if removable.is_empty() {
                break;
            }
            let out = removable[(state as usize) % removable.len()];
            let shrunk = b.with_box_removed(&out).expect("removable");
            let addable = shrunk.addable_boxes();
            let into = addable[(state as usize >> 8) % addable.len()];
            b = shrunk.with_box_added(&into).expect("addable");
        }
        let weights = vec![1i64; s.level()];
        let forward = order_sm(&a, &b, &s, &weights).expect("same level");
        let backward = order_sm(&b, &a, &s, &weights).expect("same level");
        prop_assert!(!(forward && backward));
        let fs = order_sstar(&a, &b, &s).expect("same level");
        let bs = order_sstar(&b, &a, &s).expect("same level");
        prop_assert!(!(fs && bs));
    }

    #[test]
    fn permutations_compose_with_their_inverses(indices in prop::collection::vec(0usize..100, 1..6)) {
        let n = indices.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (indices[i], i));
        let w = Perm::new(order).expect("bijection");
        let inv = w.inverse();
        prop_assert_eq!(w.compose(&inv).expect("same degree"), Perm::identity(n));
        prop_assert_eq!(inv.compose(&w).expect("same degree"), Perm::identity(n));
        prop_assert_eq!(w.length(), w.inverse().length());
    }

    #[test]
    fn charge_orbit_action_composes(
        entries in prop::collection::vec(-4i64..=4, 2..4),
        seed in any::<u64>(),
    ) {
        let l = entries.len();
        let s = Charge::new(entries).expect("integer charge");
        let p = Params::new(2, Kappa::Symbolic, s, None).expect("parameters");
        let all = Perm::all(l);
        let w = all[(seed as usize) % all.len()].clone();
        let u = all[(seed as usize >> 16) % all.len()].clone();
        let one_step = sl_act(&u.compose(&w).expect("same degree"), &p).expect("action");
        let two_steps = sl_act(&u, &sl_act(&w, &p).expect("action")).expect("action");
        prop_assert_eq!(one_step.s, two_steps.s);
        prop_assert_eq!(sl_act(&Perm::identity(l), &p).expect("action").s, p.s);
    }

    #[test]
    fn integral_difference_is_reflexive_and_shift_stable(
        entries in prop::collection::vec(-4i64..=4, 1..4),
        shift in -3i64..=3,
    ) {
        let l = entries.len();
        let s = Charge::new(entries.clone()).expect("integer charge");
        let p = Params::new(2, Kappa::Symbolic, s, None).expect("parameters");
        prop_assert!(integral_difference(&p, &p).expect("same mode"));
        let moved = Charge::new(entries.iter().map(|&x| x + shift).collect())
            .expect("integer charge");
        let q = Params::new(2, Kappa::Symbolic, moved, None).expect("parameters");
        prop_assert!(integral_difference(&p, &q).expect("same mode"));
        let _ = l;
    }
}
