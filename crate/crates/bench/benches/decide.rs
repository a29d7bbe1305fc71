use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use funcobs::decide::check_all;
use funcobs::exactlin::rational::int;
use funcobs::geometry::strong_star_inclusion;
use funcobs::markov::{default_kmax, kernel_inclusion_upto};
use funcobs::polymat::{smith_form, PolyMatrix, Polynomial};
use funcobs::stability::is_hurwitz;
use funcobs::witness::solve_over_field;
use funcobs::{Matrix, SystemSextuple};

/// Deterministic entries in `-2..=2` without pulling in an RNG.
fn entry(seed: usize, i: usize, j: usize) -> i64 {
    ((seed * 31 + i * 17 + j * 7 + i * j) % 5) as i64 - 2
}

fn plant(n: usize, m: usize, seed: usize) -> SystemSextuple {
    let mat = |r: usize, c: usize, k: usize| Matrix::from_fn(r, c, |i, j| int(entry(seed + k, i, j)));
    SystemSextuple::new(mat(n, n, 0), mat(n, m, 1), mat(2, n, 2), mat(2, m, 3), mat(1, n, 4), mat(1, m, 5)).unwrap()
}

fn bench_decide(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_all");
    for (n, m) in [(2, 1), (3, 2), (4, 2)] {
        let s = plant(n, m, n * 10 + m);
        g.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_m{m}")), &s, |b, s| {
            b.iter(|| check_all(black_box(s)).unwrap())
        });
    }
    g.finish();

    let s = plant(4, 2, 3);
    c.bench_function("strong_star_inclusion_n4_m2", |b| b.iter(|| strong_star_inclusion(black_box(&s)).unwrap()));
    c.bench_function("toeplitz_inclusion_n4_m2", |b| {
        b.iter(|| kernel_inclusion_upto(black_box(&s), default_kmax(&s)).unwrap())
    });
    c.bench_function("witness_n4_m2", |b| b.iter(|| solve_over_field(black_box(&s)).unwrap()));
}

fn bench_algebra(c: &mut Criterion) {
    let p = PolyMatrix::from_fn(4, 5, |i, j| {
        Polynomial::from_ints(&[entry(1, i, j), entry(2, i, j), entry(3, j, i)])
    });
    c.bench_function("smith_4x5_deg2", |b| b.iter(|| smith_form(black_box(&p))));

    // (s + 1)^4 (s^2 + s + 2)^2
    let h = &Polynomial::from_ints(&[1, 1]).pow(4) * &Polynomial::from_ints(&[2, 1, 1]).pow(2);
    c.bench_function("routh_degree_8", |b| b.iter(|| is_hurwitz(black_box(&h)).unwrap()));
}

criterion_group!(benches, bench_decide, bench_algebra);
criterion_main!(benches);
