use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tdgen::congestion::{gen_pseudorandom, gen_random, RandomParams, SectorBox};
use tdgen::detect_conflicts;
use tdgen_bench::planar_request;

fn conflict_detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("detect_conflicts");
    for n in [50, 200, 800] {
        let inst = gen_random(&RandomParams::new(n, SectorBox::square(300.0, 0.0), 1)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| b.iter(|| detect_conflicts(inst)));
    }
    group.finish();
}

fn pseudorandom(c: &mut Criterion) {
    let mut group = c.benchmark_group("gen_pseudorandom");
    group.sample_size(10);
    for n in [10, 20, 30] {
        let cfg = planar_request(n, 0.1, 200.0, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &cfg, |b, cfg| b.iter(|| gen_pseudorandom(cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, conflict_detection, pseudorandom);
criterion_main!(benches);
