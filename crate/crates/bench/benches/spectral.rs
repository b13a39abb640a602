use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hahnchain_bench::odd_chain;
use hahnchain_core::{certify_pst, eigensystem, fidelity_trace, stieltjes_reconstruct, verify_christoffel_link};
use std::hint::black_box;

fn bench_eigensystem(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigensystem");
    for n in [31usize, 127, 511] {
        let (_, chain) = odd_chain(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &chain, |b, chain| {
            b.iter(|| eigensystem(black_box(chain)).unwrap())
        });
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    for n in [7usize, 31, 63] {
        let (p, _) = odd_chain(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| certify_pst(black_box(p)).unwrap()));
    }
    group.finish();
}

fn bench_reconstruct(c: &mut Criterion) {
    let (_, chain) = odd_chain(31);
    let dec = eigensystem(&chain).unwrap();
    let weights = dec.weights();
    c.bench_function("stieltjes_31", |b| {
        b.iter(|| stieltjes_reconstruct(black_box(&dec.eigenvalues), black_box(&weights)).unwrap())
    });
}

fn bench_trace(c: &mut Criterion) {
    let (_, chain) = odd_chain(31);
    c.bench_function("fidelity_trace_31x1000", |b| {
        b.iter(|| fidelity_trace(black_box(&chain), 10.0, 1000).unwrap())
    });
}

fn bench_christoffel(c: &mut Criterion) {
    c.bench_function("christoffel_link_exact_21", |b| {
        b.iter(|| verify_christoffel_link(21, black_box(hahnchain_core::Rational::from_integer(2.into()))).unwrap())
    });
}

criterion_group!(benches, bench_eigensystem, bench_certify, bench_reconstruct, bench_trace, bench_christoffel);
criterion_main!(benches);
