use crate::error::{Result, TsteinError};
use crate::matrix::DenseMatrix;

/// Which triangle of the coefficient matrix is populated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangle {
    Upper,
    Lower,
}

/// Relative cutoff below which a diagonal entry counts as zero.
pub const SINGULARITY_TOL: f64 = 1e-13;

/// Solves `t · x = rhs` by substitution. Entries outside the declared triangle are ignored.
pub fn solve_triangular(t: &DenseMatrix, rhs: &DenseMatrix, side: Triangle) -> Result<DenseMatrix> {
    let n = t.require_square()?;
    if rhs.rows() != n {
        return Err(TsteinError::DimensionMismatch(format!(
            "triangular system of order {n} with {} right-hand side rows",
            rhs.rows()
        )));
    }
    let cutoff = SINGULARITY_TOL * t.fro_norm();
    if let Some(index) = (0..n).find(|&i| t[(i, i)].norm() <= cutoff) {
        return Err(TsteinError::SingularTriangular { index });
    }
    let mut x = rhs.clone();
    for j in 0..rhs.cols() {
        match side {
            Triangle::Upper => {
                for i in (0..n).rev() {
                    let mut s = x[(i, j)];
                    for k in i + 1..n {
                        s -= t[(i, k)] * x[(k, j)];
                    }
                    x[(i, j)] = s / t[(i, i)];
                }
            }
            Triangle::Lower => {
                for i in 0..n {
                    let mut s = x[(i, j)];
                    for k in 0..i {
                        s -= t[(i, k)] * x[(k, j)];
                    }
                    x[(i, j)] = s / t[(i, i)];
                }
            }
        }
    }
    Ok(x)
}
