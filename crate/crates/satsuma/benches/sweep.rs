//! Parallel-vs-sequential benchmarks for the data-parallel sweeps:
//! the per-lambda scattering table and the per-point ray evaluation.
//!
//! With the default `parallel` feature the "rayon" entries use the rayon
//! pool while the "sequential" entries force the plain-iterator path, so
//! one `cargo bench` run compares both. Building with
//! `--no-default-features` makes the two coincide.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use satsuma::asymptotics::leading_order;
use satsuma::exec::{map_indexed, map_indexed_seq};
use satsuma::grid::{field_from_profiles, FieldProfile, Grid1D};
use satsuma::scattering::{reflection, ScatteringTable};

fn bench_field() -> satsuma::grid::FieldPair {
    let grid = Grid1D::new(-25.0, 25.0, 512).unwrap();
    field_from_profiles(
        grid,
        &FieldProfile::Sech {
            amplitude: 0.3,
            width: 1.0,
            center: 0.0,
            chirp: 0.0,
        },
        &FieldProfile::Zero,
    )
}

fn lambda_grid(m: usize) -> Vec<f64> {
    let step = 2.0 / m as f64;
    (0..2 * m)
        .map(|i| {
            if i < m {
                -(m as f64 - i as f64 - 0.5) * step
            } else {
                (i as f64 - m as f64 + 0.5) * step
            }
        })
        .collect()
}

fn bench_scattering_sweep(c: &mut Criterion) {
    let fp = bench_field();
    let mut group = c.benchmark_group("scattering_sweep");
    group.sample_size(10);
    for m in [8usize, 16] {
        let lambdas = lambda_grid(m);
        group.bench_with_input(BenchmarkId::new("rayon", 2 * m), &lambdas, |b, ls| {
            b.iter(|| map_indexed(ls.len(), |i| reflection(&fp, ls[i]).unwrap().gamma_norm_sqr()))
        });
        group.bench_with_input(BenchmarkId::new("sequential", 2 * m), &lambdas, |b, ls| {
            b.iter(|| {
                map_indexed_seq(ls.len(), |i| reflection(&fp, ls[i]).unwrap().gamma_norm_sqr())
            })
        });
    }
    group.finish();
}

fn synthetic_table() -> ScatteringTable {
    let m = 128;
    let lambdas = lambda_grid(m);
    let gammas: Vec<[num_complex::Complex64; 4]> = lambdas
        .iter()
        .map(|&l| {
            [
                num_complex::Complex64::new(0.4 / (1.0 + l * l), 0.2 * l),
                num_complex::Complex64::new(0.1 * l, 0.05),
                num_complex::Complex64::new(0.0, 0.0),
                num_complex::Complex64::new(0.0, 0.0),
            ]
        })
        .collect();
    ScatteringTable::from_gamma_rows(lambdas, gammas).unwrap()
}

fn bench_ray_evaluation(c: &mut Criterion) {
    let table = synthetic_table();
    let points: Vec<(f64, f64)> = (0..64)
        .map(|i| {
            let t = 20.0 + i as f64;
            let lambda0 = 0.5;
            (-12.0 * lambda0 * lambda0 * t, t)
        })
        .collect();
    let mut group = c.benchmark_group("ray_evaluation");
    group.bench_function("rayon", |b| {
        b.iter(|| {
            map_indexed(points.len(), |i| {
                leading_order(points[i].0, points[i].1, &table).unwrap().u_as
            })
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            map_indexed_seq(points.len(), |i| {
                leading_order(points[i].0, points[i].1, &table).unwrap().u_as
            })
        })
    });
    group.finish();
}

criterion_group!(benches, bench_scattering_sweep, bench_ray_evaluation);
criterion_main!(benches);
