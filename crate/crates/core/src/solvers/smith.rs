//! Smith iteration with repeated squaring on the Stein form
//! `W = 𝒜 W ℬ + 𝒞`, `(𝒜, ℬ, 𝒞) = (ABᵀ, AᵀB, C + ACᵀB)`:
//!
//! ```text
//! C₀ = 𝒞,   C_k = C_{k−1} + 𝒜^{2^{k−1}} C_{k−1} ℬ^{2^{k−1}}
//! ```
//!
//! so that `C_k = Σ_{i=0}^{2^k−1} 𝒜ⁱ 𝒞 ℬⁱ`.

use crate::error::{Result, TsteinError};
use crate::kernel::schur::eigenvalues;
use crate::matrix::{require_same_square, DenseMatrix};
use crate::spectral::check_solvability;
use crate::solvers::{relative_residual, stein_residual, Method, SolveOutcome};

pub const SMITH_MAX_ITERATIONS: usize = 60;

pub fn solve_smith(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    max_iterations: usize,
    tolerance: f64,
) -> Result<SolveOutcome> {
    require_same_square(&[a, b, c])?;
    if check_solvability(a, b)?.minus_one_multiplicity > 0 {
        return Err(TsteinError::MethodInapplicable(
            "Smith iteration does not handle an eigenvalue −1 of AᵀB".into(),
        ));
    }
    let mut ap = a * &b.transpose();
    let rho = eigenvalues(&ap)?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if rho >= 1.0 {
        return Err(TsteinError::MethodInapplicable(format!(
            "Smith iteration needs spectral radius of A Bᵀ below 1, got {rho:.6}"
        )));
    }
    let mut bp = &a.transpose() * b;
    let mut x = c + &(&(a * &c.transpose()) * b);
    let ab = a.fro_norm() * b.fro_norm();
    let c_norm = c.fro_norm();
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        x = &x + &(&(&ap * &x) * &bp);
        let rel = relative_residual(stein_residual(a, b, c, &x).fro_norm(), ab, x.fro_norm(), c_norm);
        trace.push(rel);
        if rel <= tolerance {
            converged = true;
            break;
        }
        ap = &ap * &ap;
        bp = &bp * &bp;
    }
    Ok(SolveOutcome::finish(a, b, c, x, Method::Smith, iterations, trace, converged))
}
