//! Periodic QZ decomposition of a pair `(A, B)`: unitary `P`, `Q` with
//! `U_A = P A Q` and `U_B = Qᴴ Bᵀ Pᴴ` both upper triangular.
//!
//! `P` comes from the Schur form of `ABᵀ`, ordered by descending eigenvalue
//! magnitude. Given `F = PA` and `G = BᵀPᴴ` with `FG` upper triangular, `Q` is
//! built one column at a time: each new column must map under `F` into the
//! span of the current leading unit vector and be parallel to the leading
//! column of the trailing block of `G`.

use crate::error::{Result, TsteinError};
use crate::kernel::householder::{householder_qr, Reflector};
use crate::kernel::schur::schur;
use crate::matrix::{require_same_square, DenseMatrix, C64};

/// Largest tolerated strict-lower entry of `U_A`, `U_B` relative to the input norms.
pub const TRIANGULARITY_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct PqzFactors {
    pub p: DenseMatrix,
    pub q: DenseMatrix,
    pub u_a: DenseMatrix,
    pub u_b: DenseMatrix,
}

impl PqzFactors {
    /// `U_A[i][i]·U_B[i][i]`, the eigenvalues of `ABᵀ` in diagonal order.
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.u_a
            .diagonal()
            .into_iter()
            .zip(self.u_b.diagonal())
            .map(|(x, y)| x * y)
            .collect()
    }
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative failure of `q` to be an admissible leading column of the trailing block.
fn defect(f: &DenseMatrix, g: &[C64], q: &[C64], f_scale: f64, g_scale: f64) -> f64 {
    let m = q.len();
    let mut fd = 0.0;
    for i in 1..m {
        let s: C64 = (0..m).map(|j| f[(i, j)] * q[j]).sum();
        fd += s.norm_sqr();
    }
    let proj: C64 = q.iter().zip(g).map(|(x, y)| x.conj() * y).sum();
    let gd: f64 = q.iter().zip(g).map(|(x, y)| (y - x * proj).norm_sqr()).sum();
    (fd.sqrt() / f_scale).max(gd.sqrt() / g_scale)
}

pub fn pqz_decompose(a: &DenseMatrix, b: &DenseMatrix) -> Result<PqzFactors> {
    let n = require_same_square(&[a, b])?;
    let mut sf = schur(&(a * &b.transpose()))?;
    // bubble sort by descending magnitude
    for pass in 0..n {
        let mut moved = false;
        for k in 0..n.saturating_sub(1 + pass) {
            if sf.t[(k, k)].norm() < sf.t[(k + 1, k + 1)].norm() {
                sf.swap(k);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let p = sf.q.adjoint();
    let mut f = &p * a;
    let mut g = &b.transpose() * &sf.q;
    let mut q = DenseMatrix::identity(n);
    let f_scale = a.fro_norm().max(f64::MIN_POSITIVE);
    let g_scale = b.fro_norm().max(f64::MIN_POSITIVE);

    for k in 0..n.saturating_sub(1) {
        let m = n - k;
        let fk = f.submatrix(k, n, k, n);
        let gcol: Vec<C64> = (k..n).map(|i| g[(i, k)]).collect();
        let mut candidates = Vec::with_capacity(2);
        let gn = norm2(&gcol);
        if gn > 0.0 {
            candidates.push(gcol.iter().map(|z| z / gn).collect::<Vec<_>>());
        }
        let (qf, _) = householder_qr(&fk.submatrix(1, m, 0, m).adjoint());
        candidates.push(qf.column(m - 1));
        let best = candidates
            .into_iter()
            .map(|cand| (defect(&fk, &gcol, &cand, f_scale, g_scale), cand))
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .map(|(_, cand)| cand)
            .expect("at least one candidate");
        let h = Reflector::new(&best);
        h.apply_right(&mut f, k);
        h.apply_left(&mut g, k);
        h.apply_right(&mut q, k);
        for i in k + 1..n {
            f[(i, k)] = C64::default();
            g[(i, k)] = C64::default();
        }
    }

    let lower_a = f.strict_lower_max();
    let lower_b = g.strict_lower_max();
    if lower_a > TRIANGULARITY_TOL * f_scale || lower_b > TRIANGULARITY_TOL * g_scale {
        return Err(TsteinError::NumericalBreakdown(format!(
            "periodic QZ left strict-lower entries {lower_a:.3e} and {lower_b:.3e}"
        )));
    }
    Ok(PqzFactors { p, q, u_a: f, u_b: g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    fn check(a: &DenseMatrix, b: &DenseMatrix) -> PqzFactors {
        let f = pqz_decompose(a, b).unwrap();
        assert!(f.p.unitarity_defect() < 1e-12);
        assert!(f.q.unitarity_defect() < 1e-12);
        assert!((&(&f.p * a) * &f.q).distance(&f.u_a) <= 1e-12 * a.fro_norm().max(1.0));
        let ub = &(&f.q.adjoint() * &b.transpose()) * &f.p.adjoint();
        assert!(ub.distance(&f.u_b) <= 1e-12 * b.fro_norm().max(1.0));
        f
    }

    #[test]
    fn remark_scalar() {
        let f = check(&DenseMatrix::from_rows(&[[-1.0]]), &DenseMatrix::from_rows(&[[1.0]]));
        assert!((f.eigenvalues()[0] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_pair_keeps_diagonal() {
        let a = DenseMatrix::from_rows(&[[3.0, 0.0], [0.0, -2.0]]);
        let b = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 4.0]]);
        let f = check(&a, &b);
        let mut da: Vec<f64> = f.u_a.diagonal().iter().map(|z| z.norm()).collect();
        da.sort_by(f64::total_cmp);
        assert!((da[0] - 2.0).abs() < 1e-14 && (da[1] - 3.0).abs() < 1e-14);
        assert!(f.u_a.strict_lower_max() == 0.0);
    }

    #[test]
    fn singular_a() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, -1.0]]);
        let b = DenseMatrix::from_rows(&[[0.5, -1.0, 2.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]]);
        check(&a, &b);
    }

    #[test]
    fn zero_b() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        check(&a, &DenseMatrix::zeros(2, 2));
    }
}
