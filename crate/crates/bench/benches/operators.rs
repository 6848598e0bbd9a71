use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cstar_core::drazin::drazin_inverse;
use cstar_core::fredholm::exact_sequence;
use cstar_core::random::{instance_rng, random_drazin_map, random_map};
use cstar_core::AlgebraShape;
use std::hint::black_box;

fn shape() -> AlgebraShape {
    AlgebraShape::new(vec![2, 3]).unwrap()
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    for m in [1, 2, 4] {
        let f = random_map(&mut instance_rng(1, m as u64), &shape(), m, m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &f, |b, f| b.iter(|| black_box(f.kernel())));
    }
    group.finish();
}

fn drazin(c: &mut Criterion) {
    let mut group = c.benchmark_group("drazin_inverse");
    for m in [1, 2, 4] {
        let f = random_drazin_map(&mut instance_rng(2, m as u64), &shape(), m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &f, |b, f| {
            b.iter(|| black_box(drazin_inverse(f).unwrap()))
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_sequence");
    for m in [1, 2, 3] {
        let mut rng = instance_rng(3, m as u64);
        let f = random_map(&mut rng, &shape(), m, m + 1).unwrap();
        let g = random_map(&mut rng, &shape(), m + 1, m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &(f, g), |b, (f, g)| {
            b.iter(|| black_box(exact_sequence(f, g).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernel, drazin, exact);
criterion_main!(benches);
