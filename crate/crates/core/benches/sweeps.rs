//! Sequential versus rayon execution of the exhaustive sweeps.
//!
//! Build with `--no-default-features` to see the fallback: the parallel
//! policy then runs on the calling thread and both lines should match.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use szq_core::exec::Exec;
use szq_core::partitions::psi_census;
use szq_core::phi::{verify_theorem, VerifyOptions};
use szq_core::relations::discover;
use szq_core::word::admissible_words;

fn policies() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::parallel()),
    ]
}

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    group.sample_size(10);
    for (name, exec) in policies() {
        let options = VerifyOptions {
            exec,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::new(name, "L2 I2 N10"), &options, |b, o| {
            b.iter(|| black_box(verify_theorem(2, 2, 10, o)))
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let words = admissible_words(3, 3);
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, exec) in policies() {
        group.bench_function(BenchmarkId::new(name, "L3 I3 N14"), |b| {
            b.iter(|| {
                exec.map(&words, |w| {
                    (0..=14).map(|n| psi_census(w, n).unwrap()).sum::<usize>()
                })
            })
        });
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations");
    group.sample_size(10);
    for (name, exec) in policies() {
        group.bench_function(BenchmarkId::new(name, "L3 I2 Q30"), |b| {
            b.iter(|| black_box(discover(3, 2, 30, exec)))
        });
    }
    group.finish();
}

criterion_group!(sweeps, theorem, census, relations);
criterion_main!(sweeps);
