use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use superdirac::analysis::{harmonics, monogenics, Chirality};
use superdirac::dsl::{normal_order, parse};
use superdirac::linalg::block_matrix;
use superdirac::operators::{dirac, equal_on, laplace};
use superdirac::SpaceConfig;
use superdirac_bench::configs;

fn normal_ordering(c: &mut Criterion) {
    let cfg = SpaceConfig::new(3, 1).unwrap();
    let mut group = c.benchmark_group("normal_order");
    for text in ["dirac*vector + vector*dirac", "[laplace, r2]", "dirac*Pi(1)"] {
        let e = parse(text).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(text), &e, |b, e| {
            b.iter(|| normal_order(&cfg, e).unwrap())
        });
    }
    group.finish();
}

fn dirac_block_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("dirac_kernel");
    group.sample_size(10);
    for cfg in configs() {
        let d = dirac(&cfg);
        let label = format!("({},{}) k=2 q=2", cfg.m(), cfg.n());
        group.bench_function(label, |b| {
            b.iter(|| block_matrix(&d, 2, 2).unwrap().kernel_basis().len())
        });
    }
    group.finish();
}

fn spaces(c: &mut Criterion) {
    let cfg = SpaceConfig::new(3, 1).unwrap();
    let mut group = c.benchmark_group("spaces");
    group.sample_size(10);
    group.bench_function("harmonics (3,1) k=3", |b| b.iter(|| harmonics(&cfg, 3).len()));
    group.bench_function("monogenics (3,1) k=2 q=4", |b| {
        b.iter(|| monogenics(&cfg, 2, 4, Chirality::All).unwrap().len())
    });
    group.finish();
}

fn identity_on_block(c: &mut Criterion) {
    let cfg = SpaceConfig::new(3, 1).unwrap();
    let d = dirac(&cfg);
    let lhs = d.compose(&d);
    let rhs = laplace(&cfg).neg();
    let mut group = c.benchmark_group("compare");
    group.sample_size(10);
    group.bench_function("dirac² = −laplace on P≤3 ⊗ S≤2", |b| b.iter(|| equal_on(&lhs, &rhs, 3, 2).equal()));
    group.finish();
}

criterion_group!(benches, normal_ordering, dirac_block_kernel, spaces, identity_on_block);
criterion_main!(benches);
