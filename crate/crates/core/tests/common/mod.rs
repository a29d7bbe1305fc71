//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use funcobs::exactlin::rational::{frac, int};
use funcobs::format::SystemFile;
use funcobs::polymat::{PolyMatrix, Polynomial};
use funcobs::{Matrix, Rational, SystemSextuple};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn systems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

pub fn load(name: &str) -> SystemFile {
    let path = systems_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    SystemFile::parse(&text).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| int(rng.random_range(lo..=hi)))
}

/// Plant with `n + m <= 6`, `1 <= n`, `p <= 3`, `1 <= q <= 2`, entries in `-2..=2`.
///
/// A third of the draws sparsify the data so that structured cases (zero
/// feedthrough, repeated outputs) show up often.
pub fn random_system(rng: &mut impl Rng) -> SystemSextuple {
    let n = rng.random_range(1..=4usize);
    let m = rng.random_range(0..=(6 - n).min(2));
    let p = rng.random_range(0..=3usize);
    let q = rng.random_range(1..=2usize);
    let sparse = rng.random_bool(1.0 / 3.0);
    let mut mat = |rows: usize, cols: usize| {
        Matrix::from_fn(rows, cols, |_, _| {
            if sparse && rng.random_bool(0.6) {
                int(0)
            } else {
                int(rng.random_range(-2..=2))
            }
        })
    };
    let (a, b, c, d, e, f) = (mat(n, n), mat(n, m), mat(p, n), mat(p, m), mat(q, n), mat(q, m));
    SystemSextuple::new(a, b, c, d, e, f).unwrap()
}

pub fn random_poly(rng: &mut impl Rng, max_degree: usize) -> Polynomial {
    let deg = rng.random_range(0..=max_degree);
    Polynomial::new((0..=deg).map(|_| int(rng.random_range(-3..=3))).collect())
}

pub fn random_poly_matrix(rng: &mut impl Rng, max_rows: usize, max_cols: usize, max_degree: usize) -> PolyMatrix {
    let rows = rng.random_range(1..=max_rows);
    let cols = rng.random_range(1..=max_cols);
    let sparse = rng.random_bool(0.3);
    PolyMatrix::from_fn(rows, cols, |_, _| {
        if sparse && rng.random_bool(0.5) {
            Polynomial::zero()
        } else {
            random_poly(rng, max_degree)
        }
    })
}

/// Real parts of the roots through the companion matrix eigenvalues.
pub fn root_real_parts(p: &Polynomial) -> Vec<f64> {
    let coeffs = p.to_f64_coeffs();
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coeffs[i] / lead;
    }
    comp.complex_eigenvalues().iter().map(|z| z.re).collect()
}

/// Polynomials of degree at most 8 that are a mix of integer-coefficient
/// draws and products of random linear and quadratic factors.
pub fn random_hurwitz_candidate(rng: &mut impl Rng) -> Polynomial {
    if rng.random_bool(0.5) {
        let deg = rng.random_range(1..=8usize);
        let mut c: Vec<Rational> = (0..deg).map(|_| int(rng.random_range(-4..=9))).collect();
        c.push(int(rng.random_range(1..=3)));
        Polynomial::new(c)
    } else {
        let mut p = Polynomial::constant(int(rng.random_range(1..=3)));
        let mut deg = 0;
        let target = rng.random_range(1..=8usize);
        while deg < target {
            // stable factors are drawn more often, so both outcomes are common
            let re = if rng.random_bool(0.85) {
                -frac(rng.random_range(1..=8), rng.random_range(1..=4))
            } else {
                frac(rng.random_range(1..=6), rng.random_range(1..=4))
            };
            if deg + 2 <= target && rng.random_bool(0.5) {
                let im2 = int(rng.random_range(1..=9));
                // (s - re)^2 + im^2
                let q = Polynomial::new(vec![&re * &re + im2, -(&re + &re), int(1)]);
                p = &p * &q;
                deg += 2;
            } else {
                p = &p * &Polynomial::new(vec![-re, int(1)]);
                deg += 1;
            }
        }
        p
    }
}
