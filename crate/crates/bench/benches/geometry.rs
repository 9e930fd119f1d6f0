use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use biased_cube::affine::{bounded_affine_witness, project_l1, RademacherSum, WitnessParams};
use biased_cube::Bias;
use biased_cube_bench::mixed_table;

fn bench_projection(c: &mut Criterion) {
    let mut group = c.benchmark_group("project_l1");
    for size in [16usize, 256, 4096] {
        let v: Vec<f64> = (0..size)
            .map(|i| ((i * 2654435761) % 1000) as f64 / 250.0 - 2.0)
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(size), &v, |b, v| {
            b.iter(|| project_l1(black_box(v), 1.0).unwrap())
        });
    }
    group.finish();
}

fn bench_rademacher_moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("rademacher_lp");
    for n in [12usize, 16, 20] {
        let raw: Vec<f64> = (1..=n).map(|i| 1.0 / i as f64).collect();
        let s = RademacherSum::new(&raw).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| s.lp_norm(black_box(3.0)).unwrap())
        });
    }
    group.finish();
}

fn bench_witness(c: &mut Criterion) {
    let f = mixed_table(Bias::symmetric(), 12);
    c.bench_function("bounded_affine_witness/n12", |b| {
        b.iter(|| bounded_affine_witness(black_box(&f), WitnessParams::STANDARD).unwrap())
    });
}

criterion_group!(
    benches,
    bench_projection,
    bench_rademacher_moments,
    bench_witness
);
criterion_main!(benches);
