use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qrm_core::distill::{accepted_enumerator_bruteforce_with, accepted_enumerator_charsum_with};
use qrm_core::gates::transversality_check_all_with;
use qrm_core::{Execution, QrmCode};

fn strategies() -> Vec<(&'static str, Execution)> {
    let mut out = vec![("sequential", Execution::Sequential)];
    if qrm_core::exec::parallel_available() {
        out.push(("parallel", Execution::Parallel));
    }
    out
}

fn bruteforce(c: &mut Criterion) {
    let mut group = c.benchmark_group("bruteforce");
    group.sample_size(10);
    for (d, r) in [(7, 1), (11, 3)] {
        let code = QrmCode::new(d, r).unwrap();
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, format!("d{d}r{r}")), &code, |b, code| {
                b.iter(|| accepted_enumerator_bruteforce_with(black_box(code), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn charsum(c: &mut Criterion) {
    let mut group = c.benchmark_group("charsum");
    group.sample_size(10);
    for (d, r) in [(11, 3), (17, 5)] {
        let code = QrmCode::new(d, r).unwrap();
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, format!("d{d}r{r}")), &code, |b, code| {
                b.iter(|| accepted_enumerator_charsum_with(black_box(code), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn transversality(c: &mut Criterion) {
    let mut group = c.benchmark_group("transversality");
    group.sample_size(10);
    for (d, r) in [(13, 3), (17, 4)] {
        let code = QrmCode::new(d, r).unwrap();
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, format!("d{d}r{r}")), &code, |b, code| {
                b.iter(|| transversality_check_all_with(black_box(code), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bruteforce, charsum, transversality);
criterion_main!(benches);
