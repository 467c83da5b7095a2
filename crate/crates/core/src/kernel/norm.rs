//! Spectral-norm estimation and singular values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::{c, DenseMatrix, C64};

pub const POWER_TOL: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 10_000;
const START_SEED: u64 = 0x5eed_0002;

/// Result of a power-iteration norm estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    /// False when the iteration cap was hit before the relative change fell below tolerance.
    pub converged: bool,
}

fn start_vector(n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    (0..n)
        .map(|_| c(rng.random_range(0.5..1.5), rng.random_range(-0.5..0.5)))
        .collect()
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of a linear operator given by its action and adjoint action.
pub fn operator_two_norm(
    dim: usize,
    mut apply: impl FnMut(&[C64]) -> Result<Vec<C64>>,
    mut apply_adjoint: impl FnMut(&[C64]) -> Result<Vec<C64>>,
) -> Result<NormEstimate> {
    if dim == 0 {
        return Ok(NormEstimate {
            value: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let mut v = start_vector(dim);
    let s = norm2(&v);
    v.iter_mut().for_each(|z| *z /= s);
    let mut estimate = 0.0f64;
    for it in 1..=POWER_MAX_ITERATIONS {
        let w = apply(&v)?;
        let sigma = norm2(&w);
        if sigma == 0.0 {
            return Ok(NormEstimate {
                value: 0.0,
                iterations: it,
                converged: true,
            });
        }
        let mut u = apply_adjoint(&w)?;
        let un = norm2(&u);
        // ‖Aᴴ A v‖ / ‖A v‖ tightens sigma from below
        let next = if un > 0.0 { un / sigma } else { sigma };
        let next = next.max(sigma);
        if (next - estimate).abs() <= POWER_TOL * next {
            return Ok(NormEstimate {
                value: next,
                iterations: it,
                converged: true,
            });
        }
        estimate = next;
        u.iter_mut().for_each(|z| *z /= un);
        v = u;
    }
    Ok(NormEstimate {
        value: estimate,
        iterations: POWER_MAX_ITERATIONS,
        converged: false,
    })
}

/// Spectral norm of `a` by power iteration on `aᴴ a`.
pub fn two_norm_estimate(a: &DenseMatrix) -> NormEstimate {
    let (m, n) = a.shape();
    let apply = |v: &[C64]| -> Result<Vec<C64>> {
        Ok((0..m)
            .map(|i| a.row(i).iter().zip(v).map(|(x, y)| x * y).sum())
            .collect())
    };
    let apply_adjoint = |w: &[C64]| -> Result<Vec<C64>> {
        let mut out = vec![C64::default(); n];
        for i in 0..m {
            for (o, x) in out.iter_mut().zip(a.row(i)) {
                *o += x.conj() * w[i];
            }
        }
        Ok(out)
    };
    operator_two_norm(n, apply, apply_adjoint).expect("dense products cannot fail")
}

/// Largest singular value of `a`.
pub fn two_norm(a: &DenseMatrix) -> f64 {
    two_norm_estimate(a).value
}

/// All singular values of `a` in descending order (one-sided Jacobi).
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    let (m, n) = a.shape();
    // work on the orientation with at least as many rows as columns
    let mut w = if m >= n { a.clone() } else { a.adjoint() };
    let cols = w.cols();
    let rows = w.rows();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = C64::default();
                for i in 0..rows {
                    let x = w[(i, p)];
                    let y = w[(i, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let x = w[(i, p)];
                    let y = w[(i, q)];
                    w[(i, p)] = x * cs - y * phase.conj() * sn;
                    w[(i, q)] = x * phase * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Smallest singular value of a square matrix.
pub fn min_singular_value(a: &DenseMatrix) -> f64 {
    singular_values(a).last().copied().unwrap_or(0.0)
}
