//! Shared helpers for the integration suites: seeded generators for small
//! integer problems and fixture loading.
#![allow(dead_code)] // each test target uses its own subset

use std::path::PathBuf;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use parlp::{LpProblem, Rational, RationalMatrix, RationalVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(relative: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(relative)
}

pub fn fixture(relative: &str) -> String {
    std::fs::read_to_string(fixture_path(relative))
        .unwrap_or_else(|e| panic!("fixture {relative}: {e}"))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> RationalMatrix {
    RationalMatrix::from_rows(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| Rational::from_int(rng.random_range(-bound..=bound)))
                    .collect()
            })
            .collect(),
    )
    .expect("generated rows are rectangular")
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> RationalVector {
    RationalVector::new(
        (0..dim)
            .map(|_| Rational::from_int(rng.random_range(-bound..=bound)))
            .collect(),
    )
}

/// Random problem with `m <= 3`, `n <= 6`, entries in `-3..=3`, and a
/// feasible rhs built as `b = A xbar` for a nonnegative integer `xbar`
/// (so the feasible set is never empty).
pub fn random_feasible_problem(rng: &mut ChaCha8Rng) -> LpProblem {
    let m = rng.random_range(1..=3);
    let n = rng.random_range(1..=6);
    let matrix = random_matrix(rng, m, n, 3);
    let objective = random_vector(rng, n, 3);
    let xbar = RationalVector::new(
        (0..n)
            .map(|_| Rational::from_int(rng.random_range(0..=3)))
            .collect(),
    );
    let rhs = matrix.mul_vector(&xbar);
    LpProblem::new(objective, matrix, rhs).expect("dimensions are consistent")
}
