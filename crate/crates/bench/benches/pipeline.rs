use criterion::{criterion_group, criterion_main, Criterion};
use latquad_bench::{deep_quadrangle_basis, square_basis};
use latquad_core::bound::{explore_grid, full_ideal_bound, GapCase};
use latquad_core::fibers::{enumerate_syzygy_fibers, EnumerationLimits};
use latquad_core::hilbert::hilbert_function_range;

fn bench_survey(c: &mut Criterion) {
    let basis = square_basis();
    let limits = EnumerationLimits::default();
    c.bench_function("survey_square_degree_8", |b| {
        b.iter(|| enumerate_syzygy_fibers(&basis, 8, &limits).expect("survey"));
    });

    let deep = deep_quadrangle_basis();
    c.bench_function("survey_deep_degree_12", |b| {
        b.iter(|| enumerate_syzygy_fibers(&deep, 12, &limits).expect("survey"));
    });
}

fn bench_hilbert_oracle(c: &mut Criterion) {
    let basis = square_basis();
    let limits = EnumerationLimits::default();
    c.bench_function("hilbert_counts_square_degree_12", |b| {
        b.iter(|| hilbert_function_range(&basis, 12, &limits).expect("counts"));
    });
}

fn bench_full_pipeline(c: &mut Criterion) {
    let basis = square_basis();
    let limits = EnumerationLimits::default();
    c.bench_function("full_pipeline_square_degree_8", |b| {
        b.iter(|| full_ideal_bound(&basis, 8, &limits).expect("report"));
    });
}

fn bench_explore(c: &mut Criterion) {
    c.bench_function("explore_grid_2", |b| {
        b.iter(|| explore_grid(2));
    });
}

fn bench_case_polynomials(c: &mut Criterion) {
    c.bench_function("derive_eight_case_gap_polynomials", |b| {
        b.iter(|| GapCase::ALL.map(|case| case.gap_polynomial()));
    });
}

criterion_group!(
    benches,
    bench_survey,
    bench_hilbert_oracle,
    bench_full_pipeline,
    bench_explore,
    bench_case_polynomials
);
criterion_main!(benches);
