use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use starph_bench::{distinct_lengths, equal_lengths};
use starph_core::foundation::q;
use starph_core::homology::cycle_space;
use starph_core::model::{build_reduced_model, filter_at};
use starph_core::oracle::configuration_complex;
use starph_core::persistence::{build_representation, interval_decomposition};
use starph_core::spanning::{biased_spanning_tree, model_weights};

fn representation(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_representation");
    for k in [4, 6, 8] {
        let lengths = distinct_lengths(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &lengths, |b, l| {
            b.iter(|| build_representation(black_box(l)).unwrap())
        });
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("interval_decomposition");
    for k in [4, 6, 8] {
        let rep = build_representation(&distinct_lengths(k)).unwrap();
        group.bench_with_input(BenchmarkId::new("distinct", k), &rep, |b, rep| {
            b.iter(|| interval_decomposition(black_box(rep)).unwrap())
        });
    }
    let rep = build_representation(&equal_lengths(8)).unwrap();
    group.bench_function("equal/8", |b| b.iter(|| interval_decomposition(black_box(&rep)).unwrap()));
    group.finish();
}

fn graphs(c: &mut Criterion) {
    let g = build_reduced_model(&distinct_lengths(10));
    let w = model_weights(&g);
    c.bench_function("biased_spanning_tree/10", |b| {
        b.iter(|| biased_spanning_tree(black_box(&g), &w).unwrap())
    });
    let filtered = filter_at(&g, &q(1, 4));
    c.bench_function("cycle_space/10", |b| b.iter(|| cycle_space(black_box(&filtered))));
}

fn oracle(c: &mut Criterion) {
    let lengths = distinct_lengths(5);
    c.bench_function("configuration_complex/5", |b| {
        b.iter(|| configuration_complex(black_box(&lengths), &q(3, 4)).unwrap())
    });
}

criterion_group!(benches, representation, decomposition, graphs, oracle);
criterion_main!(benches);
