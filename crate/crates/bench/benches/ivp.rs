use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ivp_bench::{cubic_triple, quartic_product};
use ivp_core::{
    build_d_sequence, build_pi_sequence, factor, is_integer_valued, is_irreducible, CanonicalIvp,
    DegreeVector, PointSet, Prime,
};
use num_bigint::BigInt;

fn sequences(c: &mut Criterion) {
    let z2 = PointSet::lattice(2, 32).unwrap();
    let m = DegreeVector::large(2);
    let mut g = c.benchmark_group("pi_sequence");
    for count in [6usize, 10, 15] {
        g.bench_with_input(BenchmarkId::from_parameter(count), &count, |b, &n| {
            let p = Prime::from_u64(2).unwrap();
            b.iter(|| build_pi_sequence(&z2, &p, &m, black_box(n)).unwrap())
        });
    }
    g.finish();
    c.bench_function("d_sequence/d=12,m=(2,2)", |b| {
        let m = DegreeVector::finite(&[2, 2]);
        b.iter(|| build_d_sequence(&z2, &BigInt::from(12), &m, 10).unwrap())
    });
}

fn factorization(c: &mut Criterion) {
    let q = quartic_product();
    let t = cubic_triple();
    c.bench_function("factor/quartic_product", |b| b.iter(|| factor(black_box(&q)).unwrap()));
    c.bench_function("factor/cubic_triple", |b| b.iter(|| factor(black_box(&t)).unwrap()));
}

fn decisions(c: &mut Criterion) {
    let z2 = PointSet::lattice(2, 32).unwrap();
    let half = CanonicalIvp::new(quartic_product(), BigInt::from(2)).unwrap();
    let quarter = CanonicalIvp::new(quartic_product(), BigInt::from(4)).unwrap();
    c.bench_function("membership/quartic_over_4", |b| {
        b.iter(|| is_integer_valued(black_box(&quarter), &z2).unwrap())
    });
    c.bench_function("irreducible/quartic_over_2", |b| {
        b.iter(|| is_irreducible(black_box(&half), &z2).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = sequences, factorization, decisions
}
criterion_main!(benches);
