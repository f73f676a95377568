use std::hint::black_box;

use ccrecon::scheme::{deterministic_scheme, random_scheme, verify_scheme, VerifyMode};
use ccrecon_bench::SEED;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("scheme-build");
    for p in [1, 2, 3] {
        group.bench_with_input(BenchmarkId::new("splitter", p), &p, |b, &p| {
            b.iter(|| black_box(deterministic_scheme(64, p).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("random", p), &p, |b, &p| {
            b.iter(|| black_box(random_scheme(64, p, &mut ChaCha8Rng::seed_from_u64(SEED)).unwrap()))
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("scheme-verify");
    group.sample_size(10);
    for (n, p) in [(12, 3), (20, 2)] {
        let s = deterministic_scheme(n, p).unwrap();
        group.bench_with_input(BenchmarkId::new(format!("n{n}"), p), &s, |b, s| {
            b.iter(|| black_box(verify_scheme(s, VerifyMode::exhaustive()).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, build, verify);
criterion_main!(benches);
