use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dmb_core::generate::{random_large, RandomParams};
use dmb_core::oracle::{check_random, check_random_seq, OracleLimits};
use dmb_core::{decompose, max_b_matching};

fn batch_check(c: &mut Criterion) {
    let params = RandomParams::default();
    let limits = OracleLimits::default();
    let count = 200;
    let mut group = c.benchmark_group("oracle_batch");
    group.throughput(Throughput::Elements(count));
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(check_random_seq(count, 7, &params, &limits)))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(check_random(count, 7, &params, &limits)))
    });
    group.finish();
}

fn decompose_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for edges in [10_000usize, 20_000, 40_000, 80_000] {
        let g = random_large(edges, 2024);
        let m = max_b_matching(&g);
        group.throughput(Throughput::Elements(edges as u64));
        group.bench_with_input(BenchmarkId::from_parameter(edges), &(g, m), |b, (g, m)| {
            b.iter(|| black_box(decompose(g, m).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, batch_check, decompose_scaling);
criterion_main!(benches);
