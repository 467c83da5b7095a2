//! Kronecker product, column stacking and the commutation (vec-transpose) permutation.

use crate::error::{Result, TsteinError};
use crate::matrix::{re, DenseMatrix};

/// Kronecker product: block `(i, j)` of the result is `a[i][j] * b`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = DenseMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Stacks the columns of `x` into a single column.
pub fn vec(x: &DenseMatrix) -> DenseMatrix {
    let (r, cols) = x.shape();
    let mut v = Vec::with_capacity(r * cols);
    for j in 0..cols {
        for i in 0..r {
            v.push(x[(i, j)]);
        }
    }
    DenseMatrix::column_vector(&v)
}

/// Inverse of [`vec`] for the given shape.
pub fn unvec(v: &DenseMatrix, rows: usize, cols: usize) -> Result<DenseMatrix> {
    if v.rows() * v.cols() != rows * cols {
        return Err(TsteinError::DimensionMismatch(format!(
            "cannot reshape {} entries into {rows}x{cols}",
            v.rows() * v.cols()
        )));
    }
    let flat = v.as_slice();
    Ok(DenseMatrix::from_fn(rows, cols, |i, j| flat[i + rows * j]))
}

/// The n²×n² permutation with `perm_matrix(n) · vec(X) = vec(Xᵀ)`.
pub fn perm_matrix(n: usize) -> DenseMatrix {
    let mut p = DenseMatrix::zeros(n * n, n * n);
    // vec(X)[i + n j] = X[i][j] lands at vec(Xᵀ)[j + n i]
    for i in 0..n {
        for j in 0..n {
            p[(j + n * i, i + n * j)] = re(1.0);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    #[test]
    fn kron_scalar() {
        let k = kron(
            &DenseMatrix::from_rows(&[[2.0]]),
            &DenseMatrix::from_rows(&[[5.0]]),
        );
        assert_eq!(k, DenseMatrix::from_rows(&[[10.0]]));
    }

    #[test]
    fn kron_identity_is_block_diagonal() {
        let b = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let k = kron(&DenseMatrix::identity(2), &b);
        let expected = DenseMatrix::from_rows(&[
            [1.0, 2.0, 0.0, 0.0],
            [3.0, 4.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 2.0],
            [0.0, 0.0, 3.0, 4.0],
        ]);
        assert_eq!(k, expected);
    }

    #[test]
    fn vec_stacks_columns() {
        let x = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        let v = vec(&x);
        let got: Vec<f64> = v.as_slice().iter().map(|z| z.re).collect();
        assert_eq!(got, vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(unvec(&v, 2, 2).unwrap(), x);
    }

    #[test]
    fn unvec_rejects_bad_shape() {
        let v = DenseMatrix::column_vector(&[c(1.0, 0.0); 5]);
        assert!(unvec(&v, 2, 2).is_err());
    }

    #[test]
    fn perm_matrix_small_cases() {
        assert_eq!(perm_matrix(1), DenseMatrix::identity(1));
        // Enumerating sum_{i,j} e_j e_i^T ⊗ e_i e_j^T for n = 2 by hand:
        // only coordinates 2 and 3 (1-based) are exchanged.
        let expected = DenseMatrix::from_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(perm_matrix(2), expected);
    }

    #[test]
    fn perm_matrix_matches_definition_sum() {
        // sum over (i, j) of kron(e_j e_i^T, e_i e_j^T)
        for n in 1..=4 {
            let mut sum = DenseMatrix::zeros(n * n, n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut left = DenseMatrix::zeros(n, n);
                    left[(j, i)] = re(1.0);
                    let mut right = DenseMatrix::zeros(n, n);
                    right[(i, j)] = re(1.0);
                    sum = &sum + &kron(&left, &right);
                }
            }
            assert_eq!(perm_matrix(n), sum, "n = {n}");
        }
    }
}
