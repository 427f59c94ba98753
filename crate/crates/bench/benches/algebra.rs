use criterion::{criterion_group, criterion_main, Criterion};
use flagbethe_bench::{dense_poly, weight};
use flagbethe_core::bethe::{expand_universal_operator, operator_matrix, KMode};
use flagbethe_core::quasiexp::{fundamental_diffop, QuasiExponentialFamily};
use flagbethe_core::tensor::pairing_matrix;
use std::hint::black_box;

fn polynomials(c: &mut Criterion) {
    let p = dense_poly(3, 4);
    c.bench_function("mpoly_mul_dense", |b| b.iter(|| black_box(&p) * black_box(&p)));
}

fn bethe(c: &mut Criterion) {
    c.bench_function("universal_operator_n2_j3", |b| {
        b.iter(|| expand_universal_operator(2, 3, KMode::Symbolic).unwrap())
    });
    let fam = expand_universal_operator(2, 3, KMode::Symbolic).unwrap();
    let lam = weight(&[2, 1]);
    c.bench_function("operator_matrix_b23", |b| b.iter(|| operator_matrix(fam.get(2, 3), &lam, None).unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let lam = weight(&[2, 2]);
    c.bench_function("pairing_matrix_22", |b| b.iter(|| pairing_matrix(black_box(&lam)).unwrap()));
}

fn quasi_exponentials(c: &mut Criterion) {
    let f = QuasiExponentialFamily::generic(&weight(&[2, 1]), &KMode::Symbolic).unwrap();
    c.bench_function("fundamental_diffop_21_j4", |b| b.iter(|| fundamental_diffop(&f, 4).unwrap()));
}

criterion_group!(benches, polynomials, bethe, cohomology, quasi_exponentials);
criterion_main!(benches);
