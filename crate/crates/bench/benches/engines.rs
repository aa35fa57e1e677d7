use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use markedbracket::diagram::diagram_graph;
use markedbracket::oracle::{kauffman_state_sum, DEFAULT_GUARD};
use markedbracket::{bracket_nullity, bracket_recursive};
use markedbracket_bench::{diagrams, graphs};
use std::hint::black_box;

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("bracket");
    for n in [6, 8, 10] {
        let inputs = graphs(n, 8);
        group.bench_with_input(BenchmarkId::new("nullity", n), &inputs, |b, gs| {
            b.iter(|| gs.iter().map(|g| bracket_nullity(black_box(g))).collect::<Vec<_>>())
        });
        group.bench_with_input(BenchmarkId::new("recursion", n), &inputs, |b, gs| {
            b.iter(|| gs.iter().map(|g| bracket_recursive(black_box(g))).collect::<Vec<_>>())
        });
    }
    for n in [14, 18] {
        let inputs = graphs(n, 2);
        group.bench_with_input(BenchmarkId::new("nullity", n), &inputs, |b, gs| {
            b.iter(|| gs.iter().map(|g| bracket_nullity(black_box(g))).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagram");
    for n in [6, 10] {
        let inputs = diagrams(n, 2, 4);
        group.bench_with_input(BenchmarkId::new("state_sum", n), &inputs, |b, ds| {
            b.iter(|| ds.iter().map(|d| kauffman_state_sum(black_box(d), DEFAULT_GUARD).unwrap()).collect::<Vec<_>>())
        });
        group.bench_with_input(BenchmarkId::new("graph_pipeline", n), &inputs, |b, ds| {
            b.iter(|| ds.iter().map(|d| bracket_nullity(&diagram_graph(black_box(d)))).collect::<Vec<_>>())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = engines, oracle
}
criterion_main!(benches);
