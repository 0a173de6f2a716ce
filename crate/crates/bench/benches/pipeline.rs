use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nanodisc_core::coloring::verify;
use nanodisc_core::constructive::{color_family, derive_base_tables};
use nanodisc_core::disc::{check_structure, generate};
use nanodisc_core::semigraph::cycle_graph;
use nanodisc_core::solver::{solve, Budget, TotalProblem};

fn bench_generate(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate");
    for r in [2usize, 5, 10, 20] {
        g.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| generate(r).unwrap())
        });
    }
    g.finish();
}

fn bench_structure_checks(c: &mut Criterion) {
    let d = generate(8).unwrap();
    c.bench_function("check_structure/8", |b| b.iter(|| check_structure(&d)));
}

fn bench_verify(c: &mut Criterion) {
    let d = generate(5).unwrap();
    let w = color_family(&d).unwrap();
    c.bench_function("verify/5", |b| b.iter(|| verify(d.graph(), &w.coloring).unwrap()));
}

fn bench_tables(c: &mut Criterion) {
    c.bench_function("derive_base_tables/5", |b| {
        b.iter(|| derive_base_tables(5).unwrap())
    });
}

fn bench_family(c: &mut Criterion) {
    let d = generate(5).unwrap();
    c.bench_function("color_family/5", |b| b.iter(|| color_family(&d).unwrap()));
}

fn bench_solver(c: &mut Criterion) {
    let g = cycle_graph(12).unwrap();
    c.bench_function("solve/c12-k3", |b| {
        b.iter(|| solve(&TotalProblem::plain(&g, 3), &Budget::UNLIMITED).unwrap())
    });
}

criterion_group!(
    benches,
    bench_generate,
    bench_structure_checks,
    bench_verify,
    bench_tables,
    bench_family,
    bench_solver
);
criterion_main!(benches);
