use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plov_core::algebra::{det_poly_with, RatMatrix};
use plov_core::cohomology::{standard_form, vanishing_scan_with};
use plov_core::plov::growth_exponent_with;
use plov_core::powersum::{power_sum_matrix, SpdMatrix};
use plov_core::random::{conjugate, rng, spd, unipotent_block_sum};
use plov_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn det_poly_nodes(c: &mut Criterion) {
    let mut r = rng(1);
    let a = conjugate(&mut r, &unipotent_block_sum(&[3, 2, 1]));
    let h: SpdMatrix = spd(&mut r, 6);
    let s = power_sum_matrix(&a, &h).unwrap();
    let mut group = c.benchmark_group("det_poly");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "K=6"), &exec, |b, &exec| {
            b.iter(|| det_poly_with(&s, 66, exec))
        });
    }
    group.finish();
}

fn growth_row_sets(c: &mut Criterion) {
    let j = unipotent_block_sum(&[3, 1]);
    let m = conjugate(&mut rng(2), &RatMatrix::direct_sum(&[j.clone(), j]));
    let mut group = c.benchmark_group("growth_exponent");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "K=8,r=4"), &exec, |b, &exec| {
            b.iter(|| growth_exponent_with(&m, 4, exec).unwrap())
        });
    }
    group.finish();
}

fn vanishing_tuples(c: &mut Criterion) {
    let j = unipotent_block_sum(&[4]);
    let m = RatMatrix::direct_sum(&[j.clone(), j]);
    let h = standard_form(4);
    let mut group = c.benchmark_group("vanishing_scan");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "g=4"), &exec, |b, &exec| {
            b.iter(|| vanishing_scan_with(&m, &h, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = det_poly_nodes, growth_row_sets, vanishing_tuples
}
criterion_main!(benches);
