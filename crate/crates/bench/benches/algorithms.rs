use criterion::{black_box, criterion_group, criterion_main, Criterion};
use thompson_core::format::parse_automorphism;
use thompson_core::{conjugate, parse_row, power_conjugate, quasi_normal_basis, reduce, Automorphism, Budget, Signature};

macro_rules! bundled {
    ($name:literal) => {
        parse_automorphism(include_str!(concat!("../../../data/", $name, ".thm"))).unwrap()
    };
}

fn budget() -> Budget {
    Budget::new(10_000_000)
}

fn bench_reduce(c: &mut Criterion) {
    let sig = Signature::new(2, 1).unwrap();
    let mut text = String::from("x1");
    for depth in 0..6 {
        text = format!("{text} a1 {text} a2 L a{}", depth % 2 + 1);
    }
    let row = parse_row(&text).unwrap();
    c.bench_function("reduce/nested_lambda", |b| b.iter(|| reduce(&sig, black_box(&row)).unwrap()));
}

fn bench_qnf(c: &mut Criterion) {
    let cases: [(&str, Automorphism); 3] =
        [("pond", bundled!("pond")), ("sub2full", bundled!("sub2full")), ("cycle_type_23", bundled!("cycle_type_23"))];
    let mut group = c.benchmark_group("qnf");
    for (name, psi) in &cases {
        group.bench_function(*name, |b| b.iter(|| quasi_normal_basis(black_box(psi), &budget()).unwrap()));
    }
    group.finish();
}

fn bench_conjugate(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjugate");
    let (psi, phi) = (bundled!("infinite_conjugacy_test"), bundled!("lookingintheorbit"));
    group.bench_function("regular_infinite", |b| b.iter(|| conjugate(&psi, &phi, &budget()).unwrap()));
    let (psi, phi) = (bundled!("periodic_conj_psi"), bundled!("periodic_conj_phi"));
    group.bench_function("periodic", |b| b.iter(|| conjugate(&psi, &phi, &budget()).unwrap()));
    group.finish();
}

fn bench_power_conjugate(c: &mut Criterion) {
    let (psi, phi) = (bundled!("snf0"), bundled!("pc1_phi"));
    c.bench_function("power_conjugate/snf0_cubed", |b| {
        b.iter(|| power_conjugate(&psi, &phi, &budget()).unwrap())
    });
}

criterion_group!(benches, bench_reduce, bench_qnf, bench_conjugate, bench_power_conjugate);
criterion_main!(benches);
