use crate::error::Result;
use crate::kernel::householder::QrFactorization;
use crate::kernel::kron::{unvec, vec};
use crate::matrix::{require_same_square, DenseMatrix, C64};
use crate::solvers::{Method, SolveOutcome};
use crate::spectral::require_solvable;

/// The n²×n² coefficient matrix `I − (Bᵀ⊗A)𝒫` of the vectorized equation.
pub fn stein_matrix(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let n = require_same_square(&[a, b])?;
    let nn = n * n;
    // ((Bᵀ⊗A)𝒫)[i + n j, k + n l] = A[i][l]·B[k][j]
    let mut q = DenseMatrix::identity(nn);
    for j in 0..n {
        for i in 0..n {
            for l in 0..n {
                for k in 0..n {
                    let v: C64 = a[(i, l)] * b[(k, j)];
                    q[(i + n * j, k + n * l)] -= v;
                }
            }
        }
    }
    Ok(q)
}

/// Solves the vectorized system by column-pivoted QR.
pub fn solve_direct(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix) -> Result<SolveOutcome> {
    let n = require_same_square(&[a, b, c])?;
    require_solvable(a, b)?;
    let q = stein_matrix(a, b)?;
    let qr = QrFactorization::new(&q, true);
    let x = unvec(&qr.solve(&vec(c))?, n, n)?;
    Ok(SolveOutcome::finish(a, b, c, x, Method::Direct, 1, Vec::new(), true))
}

