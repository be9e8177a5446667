//! Decomposition into free factors and the conjugacy tests.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use thompson_core::random::random_automorphism;
use thompson_core::{
    class_shift, conjugate, conjugate_periodic, conjugate_regular_infinite, cycle_type, decompose,
    equivalence_classes, is_basis, multiplier_set, parse_word, quasi_normal_basis, rebase_to_standard_rank,
    ABasis, Automorphism, Budget, Gate, LeafType, Signature, SimpleWord, Word,
};

fn budget() -> Budget {
    Budget::new(5_000_000)
}

fn sig(n: usize, r: usize) -> Signature {
    Signature::new(n, r).unwrap()
}

fn check(psi: &Automorphism, phi: &Automorphism) -> Option<Automorphism> {
    let cert = conjugate(psi, phi, &budget()).unwrap();
    if let Some(rho) = &cert.conjugator {
        assert_eq!(&psi.conjugate_by(rho), phi);
        assert!(cert.gate.is_none());
    } else {
        assert!(cert.gate.is_some());
    }
    cert.conjugator
}

#[test]
fn decompose_splits_sub2full() {
    let psi = common::load("sub2full");
    let d = decompose(&psi, &budget()).unwrap();
    let p = d.periodic.as_ref().unwrap();
    assert_eq!(common::names(&p.leaves), ["x1 a1 a2 a1", "x1 a1 a2 a2"]);
    assert_eq!(p.restricted.sig(), sig(2, 2));
    assert_eq!(p.rebased.sig(), sig(2, 1));
    let ri = d.infinite.as_ref().unwrap();
    assert_eq!(
        common::names(&ri.leaves),
        ["x1 a2 a1", "x1 a2 a2", "x1 a1 a1 a1", "x1 a1 a1 a2"]
    );
    assert_eq!(
        common::names(&ri.dictionary),
        ["x1 a1 a1 a1", "x1 a1 a1 a2", "x1 a1 a2", "x1 a2"]
    );
    assert_eq!(d.reassemble().unwrap(), psi);
    assert!(quasi_normal_basis(&p.rebased, &budget()).unwrap().is_periodic());
    assert!(quasi_normal_basis(&ri.rebased, &budget()).unwrap().is_regular_infinite());
}

#[test]
fn rebase_dictionaries() {
    let (theta, dict) = rebase_to_standard_rank(&Automorphism::identity(sig(2, 4))).unwrap();
    assert!(theta.is_identity());
    assert_eq!(theta.sig(), sig(2, 1));
    assert_eq!(common::names(&dict), ["x1 a1 a1 a1", "x1 a1 a1 a2", "x1 a1 a2", "x1 a2"]);

    let (theta, dict) = rebase_to_standard_rank(&Automorphism::identity(sig(3, 5))).unwrap();
    assert_eq!(theta.sig(), sig(3, 1));
    assert_eq!(common::names(&dict), ["x1 a1 a1", "x1 a1 a2", "x1 a1 a3", "x1 a2", "x1 a3"]);

    let (theta, dict) = rebase_to_standard_rank(&Automorphism::identity(sig(3, 4))).unwrap();
    assert_eq!(theta.sig(), sig(3, 2));
    assert_eq!(common::names(&dict), ["x1 a1", "x1 a2", "x1 a3", "x2"]);
}

#[test]
fn cycle_type_goldens() {
    let ct = cycle_type(&common::load("cycle_type_23"), &budget()).unwrap();
    assert_eq!(ct.0, BTreeMap::from([(2, 2), (3, 1)]));
    assert_eq!(ct.lengths(), BTreeSet::from([2, 3]));
    let psi = cycle_type(&common::load("periodic_conj_psi"), &budget()).unwrap();
    let phi = cycle_type(&common::load("periodic_conj_phi"), &budget()).unwrap();
    assert_eq!(psi.multiplicity(2), 3);
    assert_eq!(phi.multiplicity(2), 1);
    assert_eq!(psi.lengths(), phi.lengths());
}

#[test]
fn periodic_example_is_conjugate() {
    let psi = common::load("periodic_conj_psi");
    let phi = common::load("periodic_conj_phi");
    assert!(check(&psi, &phi).is_some());
    let cert = conjugate_periodic(&psi, &phi, &budget()).unwrap();
    assert_eq!(psi.conjugate_by(&cert.conjugator.unwrap()), phi);
    assert_eq!(check(&psi, &common::load("cycle_type_23")), None);
}

#[test]
fn regular_infinite_example_is_conjugate() {
    let psi = common::load("infinite_conjugacy_test");
    let phi = common::load("lookingintheorbit");
    assert!(check(&psi, &phi).is_some());
    assert!(check(&phi, &psi).is_some());
    let cert = conjugate_regular_infinite(&psi, &phi, &budget()).unwrap();
    assert!(cert.is_conjugate());

    let s = psi.sig();
    let w = |t: &str| parse_word(&s, t).unwrap();
    let rho = Automorphism::from_map(
        s,
        vec![
            (w("x1 a1"), w("x1 a1 a1")),
            (w("x1 a2 a1 a1"), w("x1 a2 a2")),
            (w("x1 a2 a1 a2"), w("x1 a1 a2")),
            (w("x1 a2 a2"), w("x1 a2 a1")),
        ],
    )
    .unwrap();
    assert_eq!(psi.conjugate_by(&rho), phi);
    assert!(!is_basis(&s, &[w("x1 a1"), w("x1 a2 a2 a1")]));
}

#[test]
fn rejection_gates() {
    let gate = |a: &str, b: &str| conjugate(&common::load(a), &common::load(b), &budget()).unwrap().gate;
    assert_eq!(gate("snf0", "pc_example1"), Some(Gate::MultiplierSet));
    assert_eq!(gate("snf0", "snf2"), Some(Gate::PartMismatch));
    assert_eq!(gate("orbiteg", "snf0"), Some(Gate::PartMismatch));
    assert_eq!(gate("snf2", "cycle_type_23"), Some(Gate::CycleType));
    assert_eq!(Gate::Exhausted.to_string(), "exhausted-search");
}

/// Leaves of a quasi-normal basis grouped by the generator cone
/// `x1 a_i` they lie in, for an element preserving both cones.
fn cone_of(leaf: &SimpleWord) -> u8 {
    leaf.path()[0]
}

#[test]
fn equivalence_classes_respect_invariant_cones() {
    let b = budget();
    for name in ["lookingintheorbit", "infinite_conjugacy_test"] {
        let q = quasi_normal_basis(&common::load(name), &b).unwrap();
        assert_eq!(equivalence_classes(&q, &b).unwrap().len(), 1, "{name}");
    }
    let psi = common::load("sub2full");
    let q = quasi_normal_basis(&psi, &b).unwrap();
    for (y, z) in psi.pairs() {
        assert_eq!(cone_of(y), cone_of(z));
    }
    let ri: Vec<Vec<usize>> = equivalence_classes(&q, &b)
        .unwrap()
        .into_iter()
        .filter(|c| c.iter().all(|&i| !matches!(q.types()[i], LeafType::A { .. })))
        .collect();
    for class in &ri {
        let cones: BTreeSet<u8> = class.iter().map(|&i| cone_of(&q.basis().leaves()[i])).collect();
        assert_eq!(cones.len(), 1);
    }
    let cones: BTreeSet<u8> = ri.iter().map(|c| cone_of(&q.basis().leaves()[c[0]])).collect();
    assert_eq!(cones.len(), 2);
    assert_eq!(ri.len(), 2);
}

/// All elements of `G_{2,1}` whose canonical domain has at most four
/// leaves, built from every bijection between such bases.
fn small_elements() -> (usize, Vec<Automorphism>) {
    let s = sig(2, 1);
    let mut bases: BTreeSet<Vec<SimpleWord>> = BTreeSet::new();
    let mut layer = vec![ABasis::roots(s)];
    bases.insert(layer[0].leaves().to_vec());
    for _ in 0..3 {
        let mut next = Vec::new();
        for b in &layer {
            for leaf in b.leaves() {
                let e = b.simple_expansion(leaf).unwrap();
                if bases.insert(e.leaves().to_vec()) {
                    next.push(e);
                }
            }
        }
        layer = next;
    }
    let mut symbols = 0;
    let mut elements = BTreeSet::new();
    for y in &bases {
        for z in bases.iter().filter(|z| z.len() == y.len()) {
            for perm in permutations(y.len()) {
                symbols += 1;
                let pairs = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (Word::Simple(y[i].clone()), Word::Simple(z[j].clone())))
                    .collect();
                elements.insert(thompson_core::format::write_automorphism(
                    &Automorphism::from_map(s, pairs).unwrap(),
                ));
            }
        }
    }
    let elements = elements
        .iter()
        .map(|t| thompson_core::format::parse_automorphism(t).unwrap())
        .collect();
    (symbols, elements)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn periodic_conjugacy_against_brute_force() {
    let (symbols, all) = small_elements();
    assert_eq!(symbols, 627);
    let b = budget();
    let periodic: Vec<&Automorphism> = all
        .iter()
        .filter(|psi| quasi_normal_basis(psi, &b).unwrap().is_periodic())
        .collect();
    let lengths: Vec<BTreeSet<usize>> = periodic.iter().map(|p| cycle_type(p, &b).unwrap().lengths()).collect();
    let mut reps: BTreeMap<&BTreeSet<usize>, usize> = BTreeMap::new();
    for (i, l) in lengths.iter().enumerate() {
        reps.entry(l).or_insert(i);
    }
    for (i, psi) in periodic.iter().enumerate() {
        for (l, &j) in &reps {
            let phi = periodic[j];
            let found = check(psi, phi).is_some();
            assert_eq!(found, lengths[i] == **l, "{i} {j}");
            if !found {
                assert!(all.iter().step_by(7).all(|rho| &psi.conjugate_by(rho) != phi));
            }
        }
    }
    let sizes: Vec<(Vec<usize>, usize)> = reps
        .keys()
        .map(|l| (l.iter().copied().collect(), lengths.iter().filter(|m| m == l).count()))
        .collect();
    assert_eq!(periodic.len(), 216);
    let frozen: Vec<(Vec<usize>, usize)> = [
        (&[1][..], 1),
        (&[1, 2], 30),
        (&[1, 3], 40),
        (&[1, 4], 12),
        (&[2], 15),
        (&[2, 3], 24),
        (&[2, 4], 12),
        (&[3], 4),
        (&[4], 30),
        (&[5], 24),
        (&[6], 20),
        (&[8], 4),
    ]
    .iter()
    .map(|(l, c)| (l.to_vec(), *c))
    .collect();
    assert_eq!(sizes, frozen);
}

fn random_element(rng: &mut StdRng) -> Automorphism {
    let s = sig(rng.gen_range(2..=3), rng.gen_range(1..=2));
    let d = rng.gen_range(1..6);
    random_automorphism(s, d, 4, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjugators_are_verified(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_element(&mut rng);
        let d = rng.gen_range(1..6);
        let phi = random_automorphism(psi.sig(), d, 4, &mut rng);
        let cert = conjugate(&psi, &phi, &budget()).unwrap();
        if let Some(rho) = cert.conjugator {
            prop_assert_eq!(psi.conjugate_by(&rho), phi);
        }
    }

    #[test]
    fn planted_conjugates_are_found(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_element(&mut rng);
        let d = rng.gen_range(0..5);
        let rho = random_automorphism(psi.sig(), d, 4, &mut rng);
        let phi = psi.conjugate_by(&rho);
        let found = conjugate(&psi, &phi, &budget()).unwrap();
        prop_assert!(found.is_conjugate(), "gate {:?}", found.gate);
        prop_assert_eq!(psi.conjugate_by(found.conjugator.as_ref().unwrap()), phi);
    }

    #[test]
    fn decompositions_reassemble(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_element(&mut rng);
        let d = decompose(&psi, &budget()).unwrap();
        prop_assert_eq!(d.reassemble().unwrap(), psi);
        for part in d.periodic.iter().chain(&d.infinite) {
            let s = part.rebased.sig();
            prop_assert!(s.r() >= 1 && s.r() < s.n().max(2));
            prop_assert_eq!(part.dictionary.len(), part.leaves.len());
        }
    }

    #[test]
    fn class_shifts_commute_with_psi(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_element(&mut rng);
        let q = quasi_normal_basis(&psi, &budget()).unwrap();
        for class in equivalence_classes(&q, &budget()).unwrap() {
            let theta = class_shift(&q, &class).unwrap();
            prop_assert_eq!(theta.compose(&psi), psi.compose(&theta));
        }
    }

    #[test]
    fn multiplier_sets_are_conjugacy_invariants(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let psi = random_element(&mut rng);
        let mut ks: Vec<usize> = (0..5).collect();
        ks.shuffle(&mut rng);
        let rho = random_automorphism(psi.sig(), ks[0], 4, &mut rng);
        let a = quasi_normal_basis(&psi, &budget()).unwrap();
        let b = quasi_normal_basis(&psi.conjugate_by(&rho), &budget()).unwrap();
        prop_assert_eq!(multiplier_set(&a), multiplier_set(&b));
    }
}
