//! Property-based checks of the algebraic invariants: group action laws,
//! Wronskian bilinearity, solver round-trips and the degree law,
//! fertility propagation under reproduction, and containment of shorter
//! reproduction words in longer ones.

use miura_core::bethe::{is_bethe, is_fertile, BetheProblem, ParameterSet, Tuple};
use miura_core::liealg::{
    cartan_matrix, infinity_weight, langlands_dual, shifted_action, Family,
};
use miura_core::population::{reproduce_word, simple_reproduce, Param};
use miura_core::ratpoly::{discrete_wronskian, rat, rat_int, solve_wronskian, Rat, RatPoly};
use miura_core::{Weight, WeylWord};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    proptest::collection::vec(small_rat(), 1..=max_deg + 1)
        .prop_map(RatPoly::new)
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn family_rank() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        Just((Family::A, 1)),
        Just((Family::A, 2)),
        Just((Family::A, 3)),
        Just((Family::A, 4)),
        Just((Family::B, 2)),
        Just((Family::B, 3)),
        Just((Family::C, 3)),
        Just((Family::D, 4)),
        Just((Family::G, 2)),
        Just((Family::F, 4)),
    ]
}

proptest! {
    #[test]
    fn shifted_action_inverse_word((f, r) in family_rank(),
                                   letters in proptest::collection::vec(1usize..=4, 0..=8),
                                   coords in proptest::collection::vec(-4i64..=4, 4)) {
        let cartan = cartan_matrix(f, r).unwrap();
        let letters: Vec<usize> = letters.into_iter().map(|l| (l - 1) % r + 1).collect();
        let word = WeylWord::new(letters, r).unwrap();
        let lam = Weight::new(coords[..r].to_vec());
        let moved = shifted_action(&cartan, &word, &lam);
        let back = shifted_action(&cartan, &word.inverse(), &moved);
        prop_assert_eq!(back, lam);
    }

    #[test]
    fn dual_is_involution((f, r) in family_rank()) {
        let cartan = cartan_matrix(f, r).unwrap();
        prop_assert_eq!(langlands_dual(&langlands_dual(&cartan)), cartan);
    }

    #[test]
    fn wronskian_bilinear_antisymmetric(y in small_poly(3), u in small_poly(3),
                                        v in small_poly(3), c in small_rat()) {
        let h = rat_int(1);
        let wyu = discrete_wronskian(&y, &u, &h).unwrap();
        let wuy = discrete_wronskian(&u, &y, &h).unwrap();
        prop_assert_eq!(&wyu, &wuy.neg());
        // W(y, u + c v) = W(y, u) + c W(y, v)
        let sum = &u + &v.scalar_mul(&c);
        let lhs = discrete_wronskian(&y, &sum, &h).unwrap();
        let rhs = &wyu + &discrete_wronskian(&y, &v, &h).unwrap().scalar_mul(&c);
        prop_assert_eq!(&lhs, &rhs);
        // adding a multiple of y leaves the Wronskian unchanged
        let shifted = &u + &y.scalar_mul(&c);
        prop_assert_eq!(discrete_wronskian(&y, &shifted, &h).unwrap(), wyu);
    }

    #[test]
    fn shift_is_ring_homomorphism(p in small_poly(3), q in small_poly(3), a in small_rat()) {
        let lhs = (&p * &q).shift(&a);
        let rhs = &p.shift(&a) * &q.shift(&a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solver_round_trip_and_degree_law(y in small_poly(2), q in small_poly(4),
                                        h in (1i64..=2).prop_map(|d| rat(1, d))) {
        if let Some(u) = solve_wronskian(&y, &q, &h, y.deg()).unwrap() {
            prop_assert_eq!(discrete_wronskian(&y, &u, &h).unwrap(), q.clone());
            if u.deg() != y.deg() {
                prop_assert_eq!(u.deg() + y.deg(), q.deg() + 1);
            }
        }
    }

    #[test]
    fn fertility_propagates(rank_pick in 0usize..=3,
                            weight_coords in proptest::collection::vec(0i64..=2, 3),
                            c in small_rat(),
                            i_pick in 0usize..=2,
                            h_half in proptest::bool::ANY) {
        let (f, r) = [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::B, 2)][rank_pick];
        let cartan = cartan_matrix(f, r).unwrap();
        let h = if h_half { rat(1, 2) } else { rat_int(1) };
        let weights = vec![Weight::new(weight_coords[..r].to_vec())];
        let problem = BetheProblem::new(
            cartan, h.clone(), weights, vec![rat_int(0)],
            ParameterSet::special(r, &h),
        ).unwrap();
        let base = Tuple::ones(r);
        let i = i_pick % r + 1;
        let member = simple_reproduce(&problem, &base, i, &Param::Finite(c)).unwrap();
        if is_bethe(&problem, &member).unwrap() {
            for d in 1..=r {
                prop_assert!(is_fertile(&problem, &member, d).unwrap().is_some(),
                             "direction {} after reproducing in {}", d, i);
            }
        }
    }

    #[test]
    fn reflection_degree_law(weight in 1i64..=2, c in small_rat()) {
        // when a reproduction step changes the degree, the new weight at
        // infinity is the shifted reflection of the old one
        let cartan = cartan_matrix(Family::A, 2).unwrap();
        let h = rat_int(1);
        let problem = BetheProblem::new(
            cartan.clone(), h.clone(),
            vec![Weight::new(vec![weight, 0])], vec![rat_int(0)],
            ParameterSet::special(2, &h),
        ).unwrap();
        let base = Tuple::ones(2);
        for i in 1..=2 {
            let member = simple_reproduce(&problem, &base, i, &Param::Finite(c.clone())).unwrap();
            let old_inf = infinity_weight(&cartan, &problem.weights, &base.degrees());
            let new_inf = infinity_weight(&cartan, &problem.weights, &member.degrees());
            if member.degrees() != base.degrees() {
                let si = WeylWord::new(vec![i], 2).unwrap();
                prop_assert_eq!(new_inf, shifted_action(&cartan, &si, &old_inf));
            }
        }
    }

    #[test]
    fn subword_reachable_by_padding(c1 in small_rat()) {
        let cartan = cartan_matrix(Family::A, 2).unwrap();
        let h = rat_int(1);
        let problem = BetheProblem::new(
            cartan, h.clone(),
            vec![Weight::new(vec![1, 1])], vec![rat_int(0)],
            ParameterSet::special(2, &h),
        ).unwrap();
        let base = Tuple::ones(2);
        let short = reproduce_word(&problem, &base, &[1], &[Param::Finite(c1.clone())]);
        let padded = reproduce_word(&problem, &base, &[1, 2],
                                    &[Param::Finite(c1), Param::Infinity]);
        match (short, padded) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.result, b.result),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "padding changed reachability"),
        }
    }
}
