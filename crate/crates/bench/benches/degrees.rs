use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use segre_bench::{cube, table_formats};
use segre_core::eddeg::{frobenius_ed_degree, generic_ed_degree};
use segre_core::hyperdet::{binary_hyperdet_degree, hyperdet_degree};

fn hyperdet(c: &mut Criterion) {
    let mut g = c.benchmark_group("hyperdet_cube_d3");
    for n in [4u32, 8, 12] {
        let f = cube(n, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| hyperdet_degree(black_box(f))));
    }
    g.finish();
    c.bench_function("binary_hyperdet_d40", |b| b.iter(|| binary_hyperdet_degree(black_box(40))));
}

fn frobenius(c: &mut Criterion) {
    let mut g = c.benchmark_group("frobenius_ed");
    for f in table_formats() {
        g.bench_with_input(BenchmarkId::from_parameter(&f), &f, |b, f| b.iter(|| frobenius_ed_degree(black_box(f))));
    }
    let f = cube(6, 3);
    g.bench_with_input(BenchmarkId::from_parameter(&f), &f, |b, f| b.iter(|| frobenius_ed_degree(black_box(f))));
    g.finish();
}

fn generic(c: &mut Criterion) {
    let f = cube(10, 4);
    c.bench_function("generic_ed_10x4", |b| b.iter(|| generic_ed_degree(black_box(&f))));
}

criterion_group!(benches, hyperdet, frobenius, generic);
criterion_main!(benches);
