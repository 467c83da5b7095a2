use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tstein_bench::{contractive, iterative_tol, SIZES};
use tstein_core::solvers::SMITH_MAX_ITERATIONS;
use tstein_core::{
    check_solvability, solve_bartels_stewart, solve_cg, solve_deflating, solve_direct, solve_smith, PencilVariant,
};

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for n in SIZES {
        let p = contractive(n);
        let tol = iterative_tol(n);
        let (a, b, cm) = (&p.a, &p.b, &p.c);
        if n <= 16 {
            group.bench_with_input(BenchmarkId::new("direct", n), &n, |bn, _| {
                bn.iter(|| solve_direct(black_box(a), b, cm).unwrap())
            });
            group.bench_with_input(BenchmarkId::new("cg", n), &n, |bn, _| {
                bn.iter(|| solve_cg(black_box(a), b, cm, None, tol).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("bartels-stewart", n), &n, |bn, _| {
            bn.iter(|| solve_bartels_stewart(black_box(a), b, cm).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("smith", n), &n, |bn, _| {
            bn.iter(|| solve_smith(black_box(a), b, cm, SMITH_MAX_ITERATIONS, tol).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("deflating-m1l1", n), &n, |bn, _| {
            bn.iter(|| solve_deflating(black_box(a), b, cm, PencilVariant::M1l1).unwrap())
        });
    }
    group.finish();
}

fn solvability(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    for n in SIZES {
        let p = contractive(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bn, _| {
            bn.iter(|| check_solvability(black_box(&p.a), &p.b).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solvers, solvability);
criterion_main!(benches);
