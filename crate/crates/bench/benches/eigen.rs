use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use specpoly::algebra::{int, rat};
use specpoly::orthogonality::{finite_orthogonality_report, gram_matrix, DEFAULT_TOL};
use specpoly::{eigentable, preset};

fn spectrum(c: &mut Criterion) {
    let op = preset("chaudhry-qadir").unwrap().build_operator();
    let mut group = c.benchmark_group("spectrum");
    for n in [10, 40] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| op.spectrum(black_box(n)))
        });
    }
    group.finish();
}

fn eigenfunctions(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigentable");
    for name in ["legendre", "laguerre"] {
        let op = preset(name).unwrap().build_operator();
        group.bench_function(name, |b| b.iter(|| eigentable(&op, black_box(12))));
    }
    // degenerate eigenspaces go through full elimination
    let op = specpoly::FamilySpec::jacobi(1, int(-8), int(0))
        .unwrap()
        .build_operator();
    group.bench_function("romanovski-degenerate", |b| {
        b.iter(|| eigentable(&op, black_box(12)))
    });
    group.finish();
}

fn gram(c: &mut Criterion) {
    let mut group = c.benchmark_group("gram");
    group.sample_size(20);
    let legendre = preset("legendre").unwrap();
    group.bench_function("legendre-exact-8", |b| {
        b.iter(|| gram_matrix(&legendre, black_box(8), DEFAULT_TOL))
    });
    group.bench_function("romanovski-quadrature-4", |b| {
        b.iter(|| finite_orthogonality_report(rat(-13, 2), int(1), black_box(4), DEFAULT_TOL))
    });
    group.finish();
}

criterion_group!(benches, spectrum, eigenfunctions, gram);
criterion_main!(benches);
