use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use peircelab::harness::{run_suite, PropertySpec};
use peircelab::ideals::{inner_ideal_generated, orthogonal_annihilator};
use peircelab::linalg::svd;
use peircelab::peirce::{peirce_decompose, Tripotent};
use peircelab::{random, TripleModel, TAU_RANK};

fn backend(c: &mut Criterion) {
    let mut group = c.benchmark_group("svd");
    for n in [4, 8, 16] {
        let a = random::element(&mut random::rng(1), (n, n + 1));
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| svd(black_box(a), TAU_RANK).unwrap())
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut rng = random::rng(2);
    for n in [2, 3, 4] {
        let model = TripleModel::Rect { m: n, n: n + 1 };
        let e = random::tripotent(&mut rng, model.shape(), n - 1);
        let e = Tripotent::certify(&model, e, 1e-9).unwrap();
        c.bench_with_input(BenchmarkId::new("peirce-decompose", n), &e, |b, e| {
            b.iter(|| peirce_decompose(&model, black_box(e)).unwrap())
        });
        let x = random::deficient_element(&mut rng, model.shape(), 0.2, 2.0);
        c.bench_with_input(BenchmarkId::new("annihilator", n), &x, |b, x| {
            b.iter(|| {
                orthogonal_annihilator(&model, std::slice::from_ref(black_box(x)), 1e-8).unwrap()
            })
        });
        c.bench_with_input(BenchmarkId::new("inner-ideal", n), &x, |b, x| {
            b.iter(|| inner_ideal_generated(&model, black_box(x), 1e-8).unwrap())
        });
    }
}

fn harness(c: &mut Criterion) {
    let spec = PropertySpec {
        name: "peirce-rules".into(),
        dims: vec![3],
        trials: 10,
        tol: 1e-9,
        seed: 1,
        models: None,
    };
    c.bench_function("suite/peirce-rules-30-trials", |b| {
        b.iter(|| run_suite(std::slice::from_ref(black_box(&spec))).unwrap())
    });
}

criterion_group!(benches, backend, structure, harness);
criterion_main!(benches);
