use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use vrp_bench::fixture;
use vrp_core::christofides::{brute_force_tsp, christofides_tour};
use vrp_core::clustering::{capacitated_dbscan, DbscanParams};
use vrp_core::exact::{solve_exact, DEFAULT_NODE_LIMIT};
use vrp_core::pipeline::cluster_first_route_second;
use vrp_core::savings::clarke_wright;
use vrp_core::NodeId;

fn savings(c: &mut Criterion) {
    let mut group = c.benchmark_group("clarke_wright");
    for n in [20, 100, 400] {
        let (inst, m) = fixture(1, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| clarke_wright(black_box(&inst), black_box(&m)).unwrap())
        });
    }
    group.finish();
}

fn christofides(c: &mut Criterion) {
    let mut group = c.benchmark_group("tsp");
    for k in [6, 10] {
        let (_, m) = fixture(2, k - 1);
        let subset: Vec<NodeId> = (0..k as NodeId).collect();
        group.bench_with_input(BenchmarkId::new("christofides", k), &k, |b, _| {
            b.iter(|| christofides_tour(black_box(&subset), &m).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("brute_force", k), &k, |b, _| {
            b.iter(|| brute_force_tsp(black_box(&subset), &m).unwrap())
        });
    }
    group.finish();
}

fn clustering(c: &mut Criterion) {
    let (inst, m) = fixture(3, 200);
    let params = DbscanParams::with_defaults(&inst, &m, None, None, None);
    c.bench_function("capacitated_dbscan/200", |b| {
        b.iter(|| capacitated_dbscan(black_box(&inst), &params, &m).unwrap())
    });
    c.bench_function("cluster_first_route_second/200", |b| {
        b.iter(|| cluster_first_route_second(black_box(&inst), &params, &m).unwrap())
    });
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_exact");
    group.sample_size(10);
    for n in [6, 8, 10] {
        let (inst, m) = fixture(4, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_exact(black_box(&inst), &m, DEFAULT_NODE_LIMIT).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, savings, christofides, clustering, exact);
criterion_main!(benches);
