#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tstein_core::spectral::optimal_pairing;
use tstein_core::{DenseMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn real(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| C64::new(rng.random_range(-1.0..1.0), 0.0))
}

pub fn complex(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn scalar(v: f64) -> DenseMatrix {
    DenseMatrix::from_rows(&[[v]])
}

pub fn rel(x: &DenseMatrix, reference: &DenseMatrix) -> f64 {
    x.distance(reference) / reference.fro_norm().max(f64::MIN_POSITIVE)
}

/// Largest distance after optimal pairing of two equal-size multisets.
pub fn multiset_distance(x: &[C64], y: &[C64]) -> f64 {
    optimal_pairing(x, y).unwrap().1
}

/// Square real matrix of order `n` with entries in `[-1, 1)`.
pub fn square(n: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| DenseMatrix::from_real(n, n, &v))
}

/// Pair of real square matrices with order in `lo..=hi`.
pub fn pair(lo: usize, hi: usize) -> impl Strategy<Value = (DenseMatrix, DenseMatrix)> {
    (lo..=hi).prop_flat_map(|n| (square(n), square(n)))
}

pub fn triple(lo: usize, hi: usize) -> impl Strategy<Value = (DenseMatrix, DenseMatrix, DenseMatrix)> {
    (lo..=hi).prop_flat_map(|n| (square(n), square(n), square(n)))
}

/// Proptest config without on-disk failure persistence.
pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(n)
    }
}

/// Random matrix shaped like `m` with `‖δ‖_F = size·‖m‖_F`.
pub fn perturbation(rng: &mut ChaCha8Rng, m: &DenseMatrix, size: f64) -> DenseMatrix {
    let d = real(rng, m.rows(), m.cols());
    let dn = d.fro_norm();
    if dn == 0.0 {
        return d;
    }
    d.scale_real(size * m.fro_norm() / dn)
}
