//! Conjugate gradients on the normal equations of the operator
//! `𝒯(X) = X − A Xᵀ B`, in the minimal-error (Craig) form:
//!
//! ```text
//! R₀ = C − 𝒯(X₀),  D₀ = 𝒯*(R₀)
//! X_{k+1} = X_k + (‖R_k‖²/‖D_k‖²) D_k
//! R_{k+1} = R_k − (‖R_k‖²/‖D_k‖²) 𝒯(D_k)
//! D_{k+1} = 𝒯*(R_{k+1}) + (‖R_{k+1}‖²/‖R_k‖²) D_k
//! ```
//!
//! The search directions `D_k` double as the `P_k` of the step length.

use crate::error::Result;
use crate::matrix::{require_same_square, DenseMatrix};
use crate::solvers::{relative_residual, Method, SolveOutcome};
use crate::spectral::require_solvable;

/// `𝒯(X) = X − A Xᵀ B`.
pub fn stein_operator(a: &DenseMatrix, b: &DenseMatrix, x: &DenseMatrix) -> DenseMatrix {
    x - &(&(a * &x.transpose()) * b)
}

/// Adjoint of [`stein_operator`] under `⟨X, Y⟩ = tr(XᴴY)`: `Y − B̄ Yᵀ Ā`.
pub fn stein_adjoint(a: &DenseMatrix, b: &DenseMatrix, y: &DenseMatrix) -> DenseMatrix {
    y - &(&(&b.conj() * &y.transpose()) * &a.conj())
}

fn sq(m: &DenseMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// CG from `X₀ = 0`; the cap defaults to `n² + 10`.
pub fn solve_cg(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    max_iterations: Option<usize>,
    tolerance: f64,
) -> Result<SolveOutcome> {
    let n = require_same_square(&[a, b, c])?;
    solve_cg_from(a, b, c, &DenseMatrix::zeros(n, n), max_iterations, tolerance)
}

pub fn solve_cg_from(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    x0: &DenseMatrix,
    max_iterations: Option<usize>,
    tolerance: f64,
) -> Result<SolveOutcome> {
    let n = require_same_square(&[a, b, c, x0])?;
    require_solvable(a, b)?;
    let cap = max_iterations.unwrap_or(n * n + 10);
    let ab = a.fro_norm() * b.fro_norm();
    let c_norm = c.fro_norm();
    let mut x = x0.clone();
    let mut r = c - &stein_operator(a, b, &x);
    let mut d = stein_adjoint(a, b, &r);
    let mut rr = sq(&r);
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = relative_residual(rr.sqrt(), ab, x.fro_norm(), c_norm) <= tolerance;
    while !converged && iterations < cap {
        let dd = sq(&d);
        if dd == 0.0 {
            break;
        }
        iterations += 1;
        let alpha = rr / dd;
        x = &x + &d.scale_real(alpha);
        r = &r - &stein_operator(a, b, &d).scale_real(alpha);
        let mut rr_next = sq(&r);
        let mut rel = relative_residual(rr_next.sqrt(), ab, x.fro_norm(), c_norm);
        if rel <= tolerance {
            // confirm against the true residual, replacing the recurrence if it drifted
            r = c - &stein_operator(a, b, &x);
            rr_next = sq(&r);
            rel = relative_residual(rr_next.sqrt(), ab, x.fro_norm(), c_norm);
        }
        trace.push(rel);
        if rel <= tolerance {
            converged = true;
            break;
        }
        d = &stein_adjoint(a, b, &r) + &d.scale_real(rr_next / rr);
        rr = rr_next;
    }
    Ok(SolveOutcome::finish(a, b, c, x, Method::Cg, iterations, trace, converged))
}
