//! Bartels–Stewart style back substitution on the periodic QZ form.
//!
//! With `X̂ = P X Q̄` the equation becomes `X̂ = Â X̂ᵀ B̂ + Ĉ`, where
//! `Â = PAQ` is upper and `B̂ = P̄BQ̄ = U_Bᵀ` is lower triangular. Partition
//! off the trailing row and column:
//!
//! ```text
//! Â = [A11 a12]   B̂ = [B11  0 ]   X̂ = [X11 x12]
//!     [ 0  a22]       [b21 b22]       [x21 x22]
//! ```
//!
//! Then `x22 = c22 / (1 − a22 b22)`, the column `x12` solves the triangular
//! system `(I − a22 b22 A11 B11ᵀ) x12 = b22 A11 r21ᵀ + r12` with
//! `r21 = a22 x22 b21 + c21` and `r12 = a12 x22 b22 + c12`,
//! `x21 = a22 x12ᵀ B11 + r21`, and the leading block satisfies the same
//! equation with `C11 + a12 x12ᵀ B11 + A11 x21ᵀ b21 + a12 x22 b21`.

use crate::error::{Result, TsteinError};
use crate::kernel::triangular::{solve_triangular, Triangle};
use crate::matrix::{require_same_square, DenseMatrix, C64};
use crate::pqz::pqz_decompose;
use crate::solvers::{Method, SolveOutcome};
use crate::spectral::require_solvable;

const STEP_TOL: f64 = 1e-13;

pub fn solve_bartels_stewart(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix) -> Result<SolveOutcome> {
    let n = require_same_square(&[a, b, c])?;
    require_solvable(a, b)?;
    let f = pqz_decompose(a, b)?;
    let ah = &f.u_a;
    let bh = f.u_b.transpose();
    let mut ch = &(&f.p * c) * &f.q.conj();
    let mut xh = DenseMatrix::zeros(n, n);

    for t in (0..n).rev() {
        let a22 = ah[(t, t)];
        let b22 = bh[(t, t)];
        let ab = a22 * b22;
        let den = C64::new(1.0, 0.0) - ab;
        if den.norm() <= STEP_TOL * (1.0 + ab.norm()) {
            return Err(TsteinError::SingularStep { index: t });
        }
        let x22 = ch[(t, t)] / den;
        xh[(t, t)] = x22;
        if t == 0 {
            break;
        }
        // r21 (row) and r12 (column), length t
        let r21: Vec<C64> = (0..t).map(|j| a22 * x22 * bh[(t, j)] + ch[(t, j)]).collect();
        let r12: Vec<C64> = (0..t).map(|i| ah[(i, t)] * x22 * b22 + ch[(i, t)]).collect();

        // coefficient I − a22 b22 A11 B11ᵀ, upper triangular
        let mut coef = DenseMatrix::identity(t);
        for i in 0..t {
            for j in i..t {
                let mut s = C64::default();
                for k in i..=j {
                    s += ah[(i, k)] * bh[(j, k)];
                }
                coef[(i, j)] -= ab * s;
            }
        }
        let mut rhs = DenseMatrix::zeros(t, 1);
        for i in 0..t {
            let mut s = C64::default();
            for k in i..t {
                s += ah[(i, k)] * r21[k];
            }
            rhs[(i, 0)] = s * b22 + r12[i];
        }
        let x12 = solve_triangular(&coef, &rhs, Triangle::Upper).map_err(|e| match e {
            TsteinError::SingularTriangular { index } => TsteinError::SingularStep { index },
            other => other,
        })?;
        let x12: Vec<C64> = (0..t).map(|i| x12[(i, 0)]).collect();
        // x21 = a22 x12ᵀ B11 + r21, B11 lower
        let x21: Vec<C64> = (0..t)
            .map(|j| {
                let s: C64 = (j..t).map(|k| x12[k] * bh[(k, j)]).sum();
                a22 * s + r21[j]
            })
            .collect();
        for i in 0..t {
            xh[(i, t)] = x12[i];
            xh[(t, i)] = x21[i];
        }
        // C11 += a12 x12ᵀ B11 + A11 x21ᵀ b21 + a12 x22 b21
        let x12_b11: Vec<C64> = (0..t).map(|j| (j..t).map(|k| x12[k] * bh[(k, j)]).sum()).collect();
        for i in 0..t {
            let a12 = ah[(i, t)];
            let a11_x21: C64 = (i..t).map(|k| ah[(i, k)] * x21[k]).sum();
            for j in 0..t {
                let b21 = bh[(t, j)];
                ch[(i, j)] += a12 * x12_b11[j] + a11_x21 * b21 + a12 * x22 * b21;
            }
        }
    }

    // X = Pᴴ X̂ Qᵀ
    let x = &(&f.p.adjoint() * &xh) * &f.q.transpose();
    Ok(SolveOutcome::finish(a, b, c, x, Method::BartelsStewart, n, Vec::new(), true))
}
