use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hshift_bench::{reference_params, FIELDS, SPOT_DENSITIES};
use hshift_core::kinetics::{integrate_kinetics, relaxation_time, steady_state_numeric};
use hshift_core::pair::forbiddenness_check;
use hshift_core::shift::ab_shift;
use hshift_core::{default_constants, eigensystem, Drive, SurfaceDensities};

fn levels(c: &mut Criterion) {
    let constants = default_constants();
    let mut g = c.benchmark_group("eigensystem");
    for b in FIELDS {
        g.bench_with_input(BenchmarkId::from_parameter(b), &b, |bench, &b| {
            bench.iter(|| eigensystem(&constants, black_box(b)).unwrap())
        });
    }
    g.finish();
}

fn selection_rule(c: &mut Criterion) {
    let spec = eigensystem(&default_constants(), 4.6).unwrap();
    c.bench_function("forbiddenness_check", |b| b.iter(|| forbiddenness_check(black_box(&spec), Drive::Electron)));
}

fn kinetics(c: &mut Criterion) {
    let (p, _) = reference_params();
    let mut g = c.benchmark_group("steady_state_numeric");
    for s in SPOT_DENSITIES {
        g.bench_with_input(BenchmarkId::from_parameter(s), &s, |b, &s| {
            b.iter(|| steady_state_numeric(&p, black_box(s)).unwrap())
        });
    }
    g.finish();

    let sigma_bs = 1e12;
    let tau = relaxation_time(&p, sigma_bs).unwrap();
    let start = SurfaceDensities::from_isotherm(&p, sigma_bs, 0.0).unwrap();
    c.bench_function("integrate_kinetics_10tau", |b| {
        b.iter(|| integrate_kinetics(&p, black_box(&start), 10.0 * tau, 1e-8).unwrap())
    });
}

fn shifts(c: &mut Criterion) {
    let (k, p) = reference_params();
    c.bench_function("ab_shift", |b| b.iter(|| ab_shift(black_box(&p), black_box(&k)).unwrap()));
}

criterion_group!(benches, levels, selection_rule, kinetics, shifts);
criterion_main!(benches);
