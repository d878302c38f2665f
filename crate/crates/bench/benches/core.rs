use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use raag_bench::{elements, pentagon, words};
use raag_core::cancel::acyl_sample;
use raag_core::distance::{build_quasi_geodesic, general_distance_formula_check};
use raag_core::extension::{canonical_vertex, covering_distance_exact, ExtSnapshot, ExtVertex};
use raag_core::Raag;

fn reduce(c: &mut Criterion) {
    let r = pentagon();
    let mut group = c.benchmark_group("reduce");
    for len in [8, 32, 128] {
        let ws = words(64, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &ws, |b, ws| {
            b.iter(|| ws.iter().map(|w| r.reduce(black_box(w)).len()).sum::<usize>())
        });
    }
    group.finish();
}

fn star_length(c: &mut Criterion) {
    let mut group = c.benchmark_group("star_length");
    for syl in [4, 16, 64] {
        // A fresh group per iteration keeps the star cache cold.
        let es = elements(&pentagon(), 32, syl);
        group.bench_with_input(BenchmarkId::from_parameter(syl), &es, |b, es| {
            b.iter(|| {
                let r = pentagon();
                es.iter().map(|e| r.star_length(black_box(e))).sum::<usize>()
            })
        });
    }
    group.finish();
}

fn covering_distance(c: &mut Criterion) {
    let r = pentagon();
    let es = elements(&r, 64, 12);
    let x = ExtVertex::base_vertex(0);
    c.bench_function("covering_distance/12", |b| {
        b.iter(|| {
            es.iter()
                .map(|e| covering_distance_exact(&r, &x, &canonical_vertex(&r, 0, black_box(e))))
                .sum::<usize>()
        })
    });
}

fn snapshot(c: &mut Criterion) {
    let r = pentagon();
    let mut group = c.benchmark_group("snapshot");
    group.sample_size(10);
    for (len, exp) in [(2, 1), (3, 1), (3, 2)] {
        group.bench_function(format!("L{len}_E{exp}"), |b| {
            b.iter(|| ExtSnapshot::build(&r, len, exp).unwrap().edge_count())
        });
    }
    group.finish();
}

fn distance_formula(c: &mut Criterion) {
    let r = pentagon();
    let es = elements(&r, 8, 10);
    c.bench_function("distance_formula/10", |b| {
        b.iter(|| {
            es.iter()
                .filter(|e| !e.is_identity())
                .map(|e| {
                    let cert = build_quasi_geodesic(&r, e).unwrap();
                    general_distance_formula_check(&r, &cert).unwrap().sum
                })
                .sum::<usize>()
        })
    });
}

fn cancellation(c: &mut Criterion) {
    let r: Raag = pentagon();
    let mut group = c.benchmark_group("acyl_sample");
    group.sample_size(10);
    group.bench_function("s1_t1_L4", |b| {
        b.iter(|| acyl_sample(&r, 1, 1, 2, 4, 5, 0).unwrap().max_count)
    });
    group.finish();
}

criterion_group!(
    benches,
    reduce,
    star_length,
    covering_distance,
    snapshot,
    distance_formula,
    cancellation
);
criterion_main!(benches);
