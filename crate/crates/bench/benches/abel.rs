use abelkit::{builtin_map, derive_expansion, estimate_constant, iterate_real, Rational};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn expansion(c: &mut Criterion) {
    let map = builtin_map("I").unwrap();
    c.bench_function("derive_expansion I k=20", |b| b.iter(|| derive_expansion(black_box(&map), 20).unwrap()));
}

fn iteration(c: &mut Criterion) {
    let map = builtin_map("A").unwrap();
    let x0 = Rational::from((1, 2));
    c.bench_function("iterate_real A 10^5 steps at 300 bits", |b| {
        b.iter(|| iterate_real(black_box(&map), &x0, 100_000, 300).unwrap())
    });
}

fn constant(c: &mut Criterion) {
    let map = builtin_map("B").unwrap();
    let x0 = Rational::from(1);
    let mut group = c.benchmark_group("estimate_constant");
    group.sample_size(10);
    group.bench_function("B(1) 50 digits", |b| b.iter(|| estimate_constant(black_box(&map), &x0, 50).unwrap()));
    group.finish();
}

criterion_group!(benches, expansion, iteration, constant);
criterion_main!(benches);
