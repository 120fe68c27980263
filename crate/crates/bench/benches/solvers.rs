use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gf2quad::baselines::{self, CherlyTables};
use gf2quad::{Field, SolverTables};
use gf2quad_bench::solvable_sample;

const DEGREES: [u32; 4] = [7, 8, 12, 16];

fn bench_reduced(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduced-quadratic");
    for m in DEGREES {
        let field = Field::with_default_modulus(m).unwrap();
        let tables = SolverTables::build(&field).unwrap();
        let cherly = CherlyTables::canonical(&field);
        let sample = solvable_sample(&field, 256, 7);

        group.bench_with_input(BenchmarkId::new("proposed", m), &sample, |b, s| {
            b.iter(|| {
                for &c in s {
                    black_box(tables.solve_reduced(black_box(c)).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("cherly", m), &sample, |b, s| {
            b.iter(|| {
                for &c in s {
                    black_box(baselines::cherly_root(&field, &cherly, black_box(c)).unwrap());
                }
            })
        });
        if m % 2 == 1 {
            group.bench_with_input(BenchmarkId::new("half-trace", m), &sample, |b, s| {
                b.iter(|| {
                    for &c in s {
                        black_box(baselines::half_trace_root(&field, black_box(c)).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn bench_chien(c: &mut Criterion) {
    let mut group = c.benchmark_group("chien");
    group.sample_size(10);
    for m in [7, 8, 12] {
        let field = Field::with_default_modulus(m).unwrap();
        let coeffs = baselines::reduced_coeffs(&field, solvable_sample(&field, 1, 3)[0]);
        group.bench_with_input(BenchmarkId::from_parameter(m), &coeffs, |b, k| {
            b.iter(|| black_box(baselines::chien_roots(&field, black_box(k)).unwrap()))
        });
    }
    group.finish();
}

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("build-tables");
    for m in [8, 16, 32] {
        let field = Field::with_default_modulus(m).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &field, |b, f| {
            b.iter(|| black_box(SolverTables::build(black_box(f)).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_reduced, bench_chien, bench_tables);
criterion_main!(benches);
