use bnsl_core::par::{self, Parallelism};
use bnsl_core::solver::{solve, SolveConfig};
use bnsl_core::BnslInstance;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent solve sessions over a batch of random instances.
fn bench_solve_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let batch: Vec<BnslInstance> = (0..32)
        .map(|_| BnslInstance::complete(6, Some(2)).with_scores(|_, _| rng.gen_range(-10.0..10.0)))
        .collect();
    let cfg = SolveConfig::default();
    let mut group = c.benchmark_group("solve_batch");
    group.sample_size(10);
    for mode in [Parallelism::Sequential, Parallelism::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| par::map(mode, &batch, |inst| solve(inst, &cfg).unwrap().objective))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_solve_batch);
criterion_main!(benches);
