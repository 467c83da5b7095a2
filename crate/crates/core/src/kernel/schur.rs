//! Complex Schur decomposition: Householder Hessenberg reduction followed by
//! single-shift QR sweeps with Wilkinson shifts.

use crate::error::{Result, TsteinError};
use crate::kernel::householder::Reflector;
use crate::kernel::rotation::Rotation;
use crate::matrix::{c, DenseMatrix, C64};

/// Relative deflation threshold for subdiagonal entries.
pub const DEFLATION_TOL: f64 = 1e-14;
/// Sweep cap per eigenvalue.
pub const MAX_SWEEPS_PER_EIGENVALUE: usize = 100;

/// `input = q · t · qᴴ` with `q` unitary and `t` upper triangular.
#[derive(Clone, Debug)]
pub struct SchurFactors {
    pub q: DenseMatrix,
    pub t: DenseMatrix,
}

impl SchurFactors {
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.t.diagonal()
    }

    /// Exchanges the diagonal entries at `k` and `k + 1` by a unitary similarity.
    pub fn swap(&mut self, k: usize) {
        let n = self.t.rows();
        let a = self.t[(k, k)];
        let b = self.t[(k, k + 1)];
        let d = self.t[(k + 1, k + 1)];
        // (b, d − a) is the eigenvector for d of the leading 2x2 block
        let g = Rotation::zeroing(b, d - a);
        g.apply_rows(&mut self.t, k, k + 1, 0..n);
        g.apply_cols(&mut self.t, k, k + 1, 0..n);
        g.apply_cols(&mut self.q, k, k + 1, 0..n);
        self.t[(k + 1, k)] = C64::default();
    }
}

/// Reduces `a` to upper Hessenberg form `h = qᴴ a q`; returns `(q, h)`.
pub fn hessenberg(a: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = a.require_square()?;
    let mut h = a.clone();
    let mut q = DenseMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let r = Reflector::new(&x);
        if r.tau == 0.0 {
            continue;
        }
        r.apply_left(&mut h, k + 1);
        r.apply_right(&mut h, k + 1);
        r.apply_right(&mut q, k + 1);
        h[(k + 1, k)] = r.alpha;
        for i in k + 2..n {
            h[(i, k)] = C64::default();
        }
    }
    Ok((q, h))
}

/// Eigenvalue of the 2x2 matrix `[[a, b], [cc, d]]` closest to `d`.
pub(crate) fn wilkinson_shift(a: C64, b: C64, cc: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let bc = b * cc;
    let disc = (p * p + bc).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - bc / den
    }
}

/// Complex Schur decomposition of a square matrix.
pub fn schur(a: &DenseMatrix) -> Result<SchurFactors> {
    let n = a.require_square()?;
    let (mut q, mut h) = hessenberg(a)?;
    if n <= 1 {
        return Ok(SchurFactors { q, t: h });
    }
    let norm = h.fro_norm();
    let floor = f64::MIN_POSITIVE * (n as f64) / f64::EPSILON;
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut tol = DEFLATION_TOL * (h[(l - 1, l - 1)].norm() + h[(l, l)].norm());
            if tol == 0.0 {
                tol = DEFLATION_TOL * norm;
            }
            if h[(l, l - 1)].norm() <= tol.max(floor) {
                h[(l, l - 1)] = C64::default();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(TsteinError::NoConvergence {
                row: hi,
                col: hi - 1,
                iterations: sweeps - 1,
            });
        }
        let mu = if sweeps % 10 == 0 {
            let sub = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + c(0.75 * sub, 0.4375 * sub)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        let mut x = h[(l, l)] - mu;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let g = Rotation::zeroing(x, y);
            let first = if k > l { k - 1 } else { l };
            g.apply_rows(&mut h, k, k + 1, first..n);
            if k > l {
                h[(k + 1, k - 1)] = C64::default();
            }
            let last = (k + 2).min(hi);
            g.apply_cols(&mut h, k, k + 1, 0..last + 1);
            g.apply_cols(&mut q, k, k + 1, 0..n);
        }
    }
    Ok(SchurFactors { q, t: h })
}

/// Eigenvalues of a square matrix in Schur-diagonal order.
pub fn eigenvalues(a: &DenseMatrix) -> Result<Vec<C64>> {
    Ok(schur(a)?.eigenvalues())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::re;

    fn check_factors(a: &DenseMatrix, f: &SchurFactors) {
        assert!(f.q.unitarity_defect() < 1e-12, "unitarity");
        assert!(f.t.strict_lower_max() == 0.0, "triangularity");
        let back = &(&f.q * &f.t) * &f.q.adjoint();
        assert!(back.distance(a) <= 1e-12 * a.fro_norm().max(1.0), "reconstruction");
    }

    #[test]
    fn diagonal_input_stays_diagonal() {
        let a = DenseMatrix::from_diagonal(&[re(3.0), re(-1.0), re(0.5)]);
        let f = schur(&a).unwrap();
        check_factors(&a, &f);
        let mut ev: Vec<f64> = f.eigenvalues().iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        assert_eq!(ev, vec![-1.0, 0.5, 3.0]);
    }

    #[test]
    fn rotation_generator_has_imaginary_pair() {
        let a = DenseMatrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]);
        let f = schur(&a).unwrap();
        check_factors(&a, &f);
        let mut ev = f.eigenvalues();
        ev.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn nilpotent_block_converges() {
        let a = DenseMatrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
        let f = schur(&a).unwrap();
        check_factors(&a, &f);
    }

    #[test]
    fn swap_exchanges_eigenvalues() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0, 3.0], [0.5, -1.0, 0.25], [2.0, 0.0, 4.0]]);
        let mut f = schur(&a).unwrap();
        let before = f.eigenvalues();
        f.swap(0);
        let after = f.eigenvalues();
        assert!((before[0] - after[1]).norm() < 1e-12);
        assert!((before[1] - after[0]).norm() < 1e-12);
        check_factors(&a, &f);
    }
}
