use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hdsel::{
    compute_stats, evaluate_subset, gaussian_relation, hd_matrix, solve_blackhole, solve_exact,
    solve_greedy, upper_relation, BlackHoleParams, BuildOptions, EvalConfig, ExactParams,
    FeatureMask, ModelMode, SelectionProblem,
};
use hdsel_bench::synthetic_his;

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("hd_matrix");
    for n in [50, 200] {
        let his = synthetic_his(n, 12, 3, 1);
        let stats = compute_stats(&his);
        group.bench_with_input(BenchmarkId::from_parameter(n), &his, |b, his| {
            b.iter(|| hd_matrix(black_box(his), &stats))
        });
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("upper_relation");
    for n in [50, 200] {
        let his = synthetic_his(n, 12, 3, 1);
        let kernel = gaussian_relation(&hd_matrix(&his, &compute_stats(&his)), 0.5).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &kernel, |b, r| {
            b.iter(|| upper_relation(black_box(r)))
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let his = synthetic_his(60, 12, 3, 2);
    let problem = SelectionProblem::new(&his).unwrap();
    let model = problem
        .build(0.5, 0.5, ModelMode::Normal, BuildOptions::default())
        .unwrap();
    let mut group = c.benchmark_group("solve");
    group.bench_function("exact", |b| {
        b.iter(|| solve_exact(black_box(&model), ExactParams::default()).unwrap())
    });
    group.bench_function("greedy", |b| b.iter(|| solve_greedy(black_box(&model))));
    group.bench_function("blackhole", |b| {
        b.iter(|| solve_blackhole(black_box(&model), BlackHoleParams::default()).unwrap())
    });
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let his = synthetic_his(120, 12, 3, 3);
    let mask = FeatureMask::all(his.n_attributes());
    let config = EvalConfig::default();
    c.bench_function("evaluate_subset/120", |b| {
        b.iter(|| evaluate_subset(black_box(&his), &mask, &config).unwrap())
    });
}

criterion_group!(benches, distances, relations, solvers, evaluation);
criterion_main!(benches);
