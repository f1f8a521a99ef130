//! Hot-path benchmarks: quadrature over the Bloch sphere, model
//! construction, unitary stepping, and the hidden-state overlap sum.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use num_complex::Complex64;

use onticlab_core::hidden_model::{
    prepare, transition_probability, HiddenSpace, Preparation, SmearProfile,
};
use onticlab_core::ontic_frame::{
    born_integral, ks_distribution, ks_response, ks_response_cell_average, OnticGrid,
};
use onticlab_core::qstate::{evolve, EvolutionParams, HermitianOperator, StateVector};

fn plus() -> StateVector {
    let r = 1.0 / 2.0f64.sqrt();
    StateVector::new(vec![Complex64::new(r, 0.0), Complex64::new(r, 0.0)]).unwrap()
}

fn tilted() -> StateVector {
    StateVector::from_bloch(1.1, 2.3)
}

fn bench_born_integral(c: &mut Criterion) {
    let mut group = c.benchmark_group("born_integral");
    for (nt, np) in [(100, 200), (200, 400), (400, 800)] {
        let grid = OnticGrid::sphere(nt, np).unwrap();
        let mu = ks_distribution(&plus(), &grid).unwrap();
        let xi = ks_response(&tilted(), &grid).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{nt}x{np}")), &(), |b, _| {
            b.iter(|| born_integral(black_box(&xi), black_box(&mu)).unwrap())
        });
    }
    group.finish();
}

fn bench_model_construction(c: &mut Criterion) {
    let grid = OnticGrid::sphere(200, 400).unwrap();
    c.bench_function("ks_distribution/200x400", |b| {
        b.iter(|| ks_distribution(black_box(&plus()), &grid).unwrap())
    });
    c.bench_function("ks_response_pointwise/200x400", |b| {
        b.iter(|| ks_response(black_box(&tilted()), &grid).unwrap())
    });
    c.bench_function("ks_response_cell_average/200x400", |b| {
        b.iter(|| ks_response_cell_average(black_box(&tilted()), &grid).unwrap())
    });
}

fn bench_evolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve");
    for dim in [2usize, 8, 32] {
        let h = HermitianOperator::from_real_diagonal(
            &(0..dim).map(|k| k as f64).collect::<Vec<_>>(),
        );
        let psi = StateVector::normalized(vec![Complex64::new(1.0, 0.0); dim]).unwrap();
        let params = EvolutionParams::new(1.0, 1e-2).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &(), |b, _| {
            b.iter(|| evolve(black_box(&psi), black_box(&h), &params).unwrap())
        });
    }
    group.finish();
}

fn bench_transition_probability(c: &mut Criterion) {
    let mut group = c.benchmark_group("transition_probability");
    for (d, m) in [(2usize, 4usize), (8, 16)] {
        let space = HiddenSpace::new(d, m).unwrap();
        let profile = SmearProfile::uniform(m).unwrap();
        let psi = StateVector::normalized(vec![Complex64::new(1.0, 0.5); d]).unwrap();
        let phi = StateVector::normalized(
            (0..d).map(|k| Complex64::new(1.0, k as f64)).collect(),
        )
        .unwrap();
        let a = prepare(&Preparation::new("a", psi, profile.clone()), &space).unwrap();
        let bmp = prepare(&Preparation::new("b", phi, profile), &space).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("d{d}_m{m}")), &(), |b, _| {
            b.iter(|| transition_probability(black_box(&a), black_box(&bmp)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    kernels,
    bench_born_integral,
    bench_model_construction,
    bench_evolve,
    bench_transition_probability
);
criterion_main!(kernels);
