//! Sequential versus rayon execution of the parallel hot spots.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kmlp::heuristics::{kmlp_fast_with, KmlpFastConfig};
use kmlp::oracle::{exact_multi_vehicle, exact_single_vehicle};
use kmlp::reductions::DirectedRequestMetric;
use kmlp::rounding::heuristic_tree_provider;
use kmlp::{Execution, Instance, MetricSpace, Request};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(n: usize, k: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<(i64, i64)> =
            (0..2 * n + 1).map(|_| (rng.random_range(0..600), rng.random_range(0..600))).collect();
        let m = pts.iter().map(|a| pts.iter().map(|b| (a.0 - b.0).abs() + (a.1 - b.1).abs()).collect()).collect();
        let reqs = (0..n)
            .map(|j| Request::new(format!("q{j}"), 1 + 2 * j, 2 + 2 * j, rng.random_range(0..5000)))
            .collect();
        if let Ok(inst) = Instance::new(MetricSpace::from_matrix(m).unwrap(), reqs, vec![0; k]) {
            return inst;
        }
    }
}

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench(c: &mut Criterion) {
    let big = instance(200, 10, 1);
    let mut g = c.benchmark_group("kmlp_fast_n200_k10");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| kmlp_fast_with(&big, KmlpFastConfig { execution: exec, ..Default::default() }).unwrap())
        });
    }
    g.finish();

    let metric = DirectedRequestMetric::from_instance(&big).unwrap();
    let mut g = c.benchmark_group("tree_provider_n200");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| heuristic_tree_provider(&metric, &big, exec))
        });
    }
    g.finish();

    let single = instance(9, 1, 2);
    let multi = instance(8, 2, 3);
    let mut g = c.benchmark_group("exact_oracle");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("single_n9", name), &exec, |b, &exec| {
            b.iter(|| exact_single_vehicle(&single, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("multi_n8_k2", name), &exec, |b, &exec| {
            b.iter(|| exact_multi_vehicle(&multi, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
