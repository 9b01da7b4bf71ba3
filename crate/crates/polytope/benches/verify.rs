use bnsl_core::par::Parallelism;
use bnsl_polytope::catalog_facets;
use bnsl_polytope::verify::verify_catalog;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_verify_catalog(c: &mut Criterion) {
    let cat = catalog_facets(4, None).unwrap();
    let poly = cat.polytope().unwrap();
    let mut group = c.benchmark_group("verify_catalog_p4");
    group.sample_size(10);
    for mode in [Parallelism::Sequential, Parallelism::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| verify_catalog(&cat, &poly, mode))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_verify_catalog);
criterion_main!(benches);
