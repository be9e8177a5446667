//! Multiplier sets, bounds and the power conjugacy search.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thompson_core::random::random_automorphism;
use thompson_core::{
    bounds, conjugate, multiplier_set, power_conjugate, power_conjugate_regular_infinite, power_multiplier_set,
    primitive_root, quasi_normal_basis, sweep, Automorphism, Budget, Characteristic, MultiplierSet, Signature,
};

fn budget() -> Budget {
    Budget::new(5_000_000)
}

fn mset(psi: &Automorphism) -> MultiplierSet {
    multiplier_set(&quasi_normal_basis(psi, &budget()).unwrap())
}

fn pairs(psi: &Automorphism, phi: &Automorphism) -> BTreeSet<(i64, i64)> {
    let set = power_conjugate(psi, phi, &budget()).unwrap();
    for p in &set.pairs {
        assert_eq!(psi.power(p.a).conjugate_by(&p.conjugator), phi.power(p.b));
    }
    set.pairs.iter().map(|p| (p.a, p.b)).collect()
}

#[test]
fn multiplier_set_goldens() {
    assert_eq!(mset(&common::load("snf0")).to_string(), "{(-1, a1), (1, a2)}");
    assert_eq!(mset(&common::load("pc_example1")).to_string(), "{(-2, a1), (1, a2)}");
    assert_eq!(mset(&common::load("pc1_phi")).to_string(), "{(-1, a1 a1 a1), (1, a2 a2 a2)}");
    assert_eq!(
        mset(&common::load("pond")).to_string(),
        "{(-1, a1 a1), (1, a1 a2), (1, a2 a1)}"
    );
}

#[test]
fn power_multiplier_set_goldens() {
    let m = mset(&common::load("pc_example1"));
    assert_eq!(power_multiplier_set(&m, 2).unwrap().to_string(), "{(-1, a1), (1, a2 a2)}");
    assert_eq!(power_multiplier_set(&m, -1).unwrap().to_string(), "{(-1, a2), (2, a1)}");
    assert_eq!(
        power_multiplier_set(&mset(&common::load("snf0")), 3).unwrap(),
        mset(&common::load("pc1_phi"))
    );
    assert!(power_multiplier_set(&m, 0).is_err());
}

#[test]
fn primitive_root_goldens() {
    assert_eq!(primitive_root(&[0, 1, 0, 1]), (vec![0, 1], 2));
    assert_eq!(primitive_root(&[0, 0, 0]), (vec![0], 3));
    assert_eq!(primitive_root(&[0, 1, 1]), (vec![0, 1, 1], 1));
}

#[test]
fn sweep_order() {
    assert_eq!(
        sweep(2, 1),
        [(1, 1), (1, -1), (-1, 1), (-1, -1), (2, 1), (2, -1), (-2, 1), (-2, -1)]
    );
    assert_eq!(sweep(3, 2).len(), 3 * 2 * 4);
}

#[test]
fn bounds_goldens() {
    let snf0 = mset(&common::load("snf0"));
    let pc1 = mset(&common::load("pc1_phi"));
    let pc = mset(&common::load("pc_example1"));
    assert_eq!(bounds(&snf0, &pc1), (9, 1));
    assert_eq!(bounds(&snf0, &pc), (1, 2));
    assert_eq!(bounds(&pc, &pc1), (18, 1));
    let other = MultiplierSet([Characteristic::new(1, vec![0, 1])].into());
    assert_eq!(bounds(&snf0, &other), (0, 0));
}

#[test]
fn first_example_pairs() {
    let psi = common::load("snf0");
    let phi = common::load("pc1_phi");
    let set = power_conjugate(&psi, &phi, &budget()).unwrap();
    assert_eq!(set.bounds, Some((9, 1)));
    let found: Vec<(i64, i64, Option<u64>)> = set.pairs.iter().map(|p| (p.a, p.b, p.g)).collect();
    assert_eq!(found, [(3, 1, None), (-3, -1, None)]);
    let swap = {
        let s = psi.sig();
        let w = |t: &str| thompson_core::parse_word(&s, t).unwrap();
        Automorphism::from_map(s, vec![(w("x1 a1"), w("x1 a2")), (w("x1 a2"), w("x1 a1"))]).unwrap()
    };
    assert_eq!(psi.power(3).conjugate_by(&swap), phi);
    assert_eq!(set.pairs[0].conjugator, swap);
}

#[test]
fn second_example_has_no_pairs() {
    let set = power_conjugate(&common::load("snf0"), &common::load("pc_example1"), &budget()).unwrap();
    assert!(set.is_empty());
    assert_eq!(set.bounds, Some((1, 2)));
    assert!(power_conjugate(&common::load("pc_example1"), &common::load("pc1_phi"), &budget())
        .unwrap()
        .is_empty());
}

#[test]
fn mixed_elements() {
    let psi = common::load("sub2full");
    let set = power_conjugate(&psi, &psi, &budget()).unwrap();
    assert_eq!(set.periodic_orders, Some((2, 2)));
    assert_eq!(set.period(), 2);
    assert!(set.pairs.iter().all(|p| p.g.is_some()));
    assert!(set.pairs.iter().any(|p| (p.a, p.b) == (1, 1)));
    for p in &set.pairs {
        assert_eq!(psi.power(p.a).conjugate_by(&p.conjugator), psi.power(p.b));
    }
    assert!(power_conjugate(&psi, &common::load("snf0"), &budget()).unwrap().is_empty());
}

/// Largest `â·b̂` the random power searches are allowed to sweep.
const SEARCH_CAP: u64 = 50_000;

fn random_ri(rng: &mut StdRng) -> Automorphism {
    loop {
        let s = Signature::new(rng.gen_range(2..=3), 1).unwrap();
        let d = rng.gen_range(1..5);
        let psi = random_automorphism(s, d, 4, rng);
        if quasi_normal_basis(&psi, &budget()).unwrap().is_regular_infinite() {
            return psi;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn power_multiplier_sets_match_direct_computation(seed in any::<u64>(), a in prop::sample::select(vec![-4i64, -3, -2, -1, 1, 2, 3, 4])) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_ri(&mut rng);
        prop_assert_eq!(power_multiplier_set(&mset(&psi), a).unwrap(), mset(&psi.power(a)));
    }

    #[test]
    fn power_pairs_are_verified_and_symmetric(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_ri(&mut rng);
        let d = rng.gen_range(1..5);
        let phi = random_automorphism(psi.sig(), d, 4, &mut rng);
        let q = quasi_normal_basis(&phi, &budget()).unwrap();
        if q.is_regular_infinite() {
            let (a_hat, b_hat) = bounds(&mset(&psi), &multiplier_set(&q));
            prop_assume!(a_hat.saturating_mul(b_hat) <= SEARCH_CAP);
        }
        let forward = pairs(&psi, &phi);
        let backward: BTreeSet<(i64, i64)> = pairs(&phi, &psi).into_iter().map(|(a, b)| (b, a)).collect();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn powers_reduce_by_their_gcd(seed in any::<u64>(), c in prop::sample::select(vec![2i64, 3, 5])) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_ri(&mut rng);
        let (a_hat, b_hat) = bounds(&mset(&psi.power(c)), &mset(&psi));
        prop_assume!(a_hat.saturating_mul(b_hat) <= SEARCH_CAP);
        let found = pairs(&psi.power(c), &psi);
        prop_assert!(found.contains(&(1, c)), "{:?}", found);
        prop_assert!(found.contains(&(-1, -c)));
        let d = rng.gen_range(0..4);
        let rho = random_automorphism(psi.sig(), d, 4, &mut rng);
        let planted = pairs(&psi, &psi.power(c).conjugate_by(&rho));
        prop_assert!(planted.contains(&(c, 1)), "{:?}", planted);
    }

    #[test]
    fn bounds_dominate_small_solutions(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_ri(&mut rng);
        let phi = if rng.gen_bool(0.5) {
            let d = rng.gen_range(0..3);
            let rho = random_automorphism(psi.sig(), d, 3, &mut rng);
            psi.power(rng.gen_range(1..=3)).conjugate_by(&rho)
        } else {
            random_ri(&mut rng)
        };
        prop_assume!(phi.sig() == psi.sig());
        let (a_hat, b_hat) = bounds(&mset(&psi), &mset(&phi));
        prop_assume!(a_hat.saturating_mul(b_hat) <= SEARCH_CAP);
        let set = power_conjugate_regular_infinite(&psi, &phi, &budget()).unwrap();
        let found: Vec<(i64, i64)> = set.pairs.iter().map(|p| (p.a, p.b)).collect();
        for a in [-3i64, -2, -1, 1, 2, 3] {
            for b in [-3i64, -2, -1, 1, 2, 3] {
                if conjugate(&psi.power(a), &phi.power(b), &budget()).unwrap().is_conjugate() {
                    let generated = found.iter().any(|&(a0, b0)| a % a0 == 0 && a / a0 > 0 && a0 * b == a * b0);
                    prop_assert!(generated, "({}, {}) not generated by {:?}", a, b, found);
                }
            }
        }
    }
}
