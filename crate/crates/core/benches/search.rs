use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use frobkit::fedder::graded_summand_test;
use frobkit::ideal::{CiIdeal, Ideal, MonomialIdeal};
use frobkit::koszul::koszul_homology;
use frobkit::limits::Limits;
use frobkit::par;
use frobkit::poly::{Polynomial, Ring};

fn thread_counts() -> Vec<usize> {
    vec![1, par::current_threads().max(2)]
}

fn summand_search(c: &mut Criterion) {
    let ring = Ring::indexed(3, 6).unwrap();
    let f = Polynomial::parse(&ring, "x0*x1 + x2*x3 + x4*x5").unwrap();
    let ideal = Ideal::Ci(CiIdeal::new(&ring, vec![f]).unwrap());
    let limits = Limits::default();
    // j = 4 lies outside the band, so the whole candidate set is scanned
    let mut group = c.benchmark_group("graded_summand_test");
    group.sample_size(10);
    for threads in thread_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || graded_summand_test(black_box(&ideal), 4, 2, &limits).unwrap()))
        });
    }
    group.finish();
}

fn koszul(c: &mut Criterion) {
    let ring = Ring::indexed(2, 4).unwrap();
    let ideal = MonomialIdeal::parse(&ring, "x0^3, x1^3, x2^3, x3^2, x0*x1*x2, x1*x2*x3").unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("koszul_homology");
    group.sample_size(10);
    for threads in thread_counts() {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| par::with_threads(t, || koszul_homology(black_box(&ideal), 12, &limits).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, summand_search, koszul);
criterion_main!(benches);
