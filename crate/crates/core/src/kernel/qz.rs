//! Complex generalized Schur (QZ) decomposition of a pencil `m − λ l`, with
//! reordering of the diagonal pairs.

use crate::error::{Result, TsteinError};
use crate::kernel::householder::householder_qr;
use crate::kernel::rotation::Rotation;
use crate::kernel::schur::{DEFLATION_TOL, MAX_SWEEPS_PER_EIGENVALUE};
use crate::matrix::{c, require_same_square, DenseMatrix, C64};

/// `q_left · m · z_right = s` and `q_left · l · z_right = t`, with `s`, `t` upper triangular.
#[derive(Clone, Debug)]
pub struct QzFactors {
    pub q_left: DenseMatrix,
    pub z_right: DenseMatrix,
    pub s: DenseMatrix,
    pub t: DenseMatrix,
}

/// A generalized eigenvalue `alpha / beta`; `beta == 0` is an infinite eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralizedEigenvalue {
    pub alpha: C64,
    pub beta: C64,
}

impl GeneralizedEigenvalue {
    pub fn is_infinite(&self) -> bool {
        self.beta.norm() == 0.0
    }

    pub fn value(&self) -> C64 {
        self.alpha / self.beta
    }

    /// Chordal distance to the finite point `z` on the Riemann sphere.
    pub fn chordal_distance(&self, z: C64) -> f64 {
        let num = (self.alpha - z * self.beta).norm();
        let den = self.alpha.norm().hypot(self.beta.norm()) * 1f64.hypot(z.norm());
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }

    /// Chordal distance between two generalized eigenvalues.
    pub fn chordal_distance_to(&self, other: &GeneralizedEigenvalue) -> f64 {
        let num = (self.alpha * other.beta - other.alpha * self.beta).norm();
        let den = self.alpha.norm().hypot(self.beta.norm()) * other.alpha.norm().hypot(other.beta.norm());
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }
}

impl QzFactors {
    pub fn eigenvalues(&self) -> Vec<GeneralizedEigenvalue> {
        (0..self.s.rows())
            .map(|i| GeneralizedEigenvalue {
                alpha: self.s[(i, i)],
                beta: self.t[(i, i)],
            })
            .collect()
    }

    /// Exchanges the diagonal pairs at `k` and `k + 1` by unitary equivalence.
    pub fn swap(&mut self, k: usize) {
        let n = self.s.rows();
        let (s11, s12, s22) = (self.s[(k, k)], self.s[(k, k + 1)], self.s[(k + 1, k + 1)]);
        let (t11, t12, t22) = (self.t[(k, k)], self.t[(k, k + 1)], self.t[(k + 1, k + 1)]);
        // right null vector of t22·S − s22·T restricted to the block is (f12, −f11)
        let f11 = t22 * s11 - s22 * t11;
        let f12 = t22 * s12 - s22 * t12;
        apply_null_rotation(&mut self.s, &mut self.t, &mut self.z_right, k, f12, -f11, n);
        // left rotation restoring triangularity, driven by the larger of the two columns
        let (sa, sb) = (self.s[(k, k)], self.s[(k + 1, k)]);
        let (ta, tb) = (self.t[(k, k)], self.t[(k + 1, k)]);
        let left = if sa.norm().hypot(sb.norm()) >= ta.norm().hypot(tb.norm()) {
            Rotation::zeroing(sa, sb)
        } else {
            Rotation::zeroing(ta, tb)
        };
        left.apply_rows(&mut self.s, k, k + 1, 0..n);
        left.apply_rows(&mut self.t, k, k + 1, 0..n);
        left.apply_rows(&mut self.q_left, k, k + 1, 0..n);
        self.s[(k + 1, k)] = C64::default();
        self.t[(k + 1, k)] = C64::default();
    }

    /// Moves the selected diagonal pairs to the leading positions, keeping
    /// their relative order. Returns the reordered selection mask.
    pub fn reorder(&mut self, select: &[bool]) -> Vec<bool> {
        let mut mask = select.to_vec();
        let mut next = 0;
        for k in 0..mask.len() {
            if mask[k] {
                for j in (next..k).rev() {
                    self.swap(j);
                    mask.swap(j, j + 1);
                }
                next += 1;
            }
        }
        mask
    }
}

/// Column rotation on `(k, k+1)` of `s`, `t`, `z` whose new column `k` is
/// parallel to the 2-vector `(v0, v1)`.
fn apply_null_rotation(
    s: &mut DenseMatrix,
    t: &mut DenseMatrix,
    z: &mut DenseMatrix,
    k: usize,
    v0: C64,
    v1: C64,
    n: usize,
) {
    // G [v0; v1] = [r; 0] means Gᴴ e1 ∝ (v0, v1); right-multiplying by Gᴴ
    // makes the new column k a combination along (v0, v1).
    let g = Rotation::zeroing(v0, v1);
    g.apply_cols(s, k, k + 1, 0..n);
    g.apply_cols(t, k, k + 1, 0..n);
    g.apply_cols(z, k, k + 1, 0..n);
}

/// Generalized Schur decomposition of the regular pencil `m − λ l`.
pub fn qz(m: &DenseMatrix, l: &DenseMatrix) -> Result<QzFactors> {
    let n = require_same_square(&[m, l])?;
    let (q0, r) = householder_qr(l);
    let mut q_left = q0.adjoint();
    let mut h = &q_left * m;
    let mut t = r;
    let mut z_right = DenseMatrix::identity(n);

    // Hessenberg-triangular reduction
    for j in 0..n.saturating_sub(2) {
        for i in (j + 2..n).rev() {
            let g = Rotation::zeroing(h[(i - 1, j)], h[(i, j)]);
            g.apply_rows(&mut h, i - 1, i, j..n);
            h[(i, j)] = C64::default();
            g.apply_rows(&mut t, i - 1, i, i - 1..n);
            g.apply_rows(&mut q_left, i - 1, i, 0..n);
            let gz = Rotation::zeroing_in_row(t[(i, i)], t[(i, i - 1)]);
            // columns ordered (i, i−1) so the fill t[i][i−1] is annihilated
            gz.apply_cols(&mut t, i, i - 1, 0..i + 1);
            t[(i, i - 1)] = C64::default();
            gz.apply_cols(&mut h, i, i - 1, 0..n);
            gz.apply_cols(&mut z_right, i, i - 1, 0..n);
        }
    }

    let h_norm = h.fro_norm();
    let t_norm = t.fro_norm();
    let floor = f64::MIN_POSITIVE * (n as f64) / f64::EPSILON;
    let t_tol = (DEFLATION_TOL * t_norm).max(floor);

    let mut hi = n.saturating_sub(1);
    let mut sweeps = 0usize;
    while hi > 0 {
        // locate the unreduced block [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let mut tol = DEFLATION_TOL * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm());
            if tol == 0.0 {
                tol = DEFLATION_TOL * h_norm;
            }
            if h[(lo, lo - 1)].norm() <= tol.max(floor) {
                h[(lo, lo - 1)] = C64::default();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }

        // a zero on the diagonal of t is an infinite eigenvalue: chase it to
        // position hi and split it off
        if let Some(j) = (lo..=hi).find(|&j| t[(j, j)].norm() <= t_tol) {
            t[(j, j)] = C64::default();
            for k in j..hi {
                let g = Rotation::zeroing(t[(k, k + 1)], t[(k + 1, k + 1)]);
                g.apply_rows(&mut t, k, k + 1, k..n);
                t[(k + 1, k + 1)] = C64::default();
                g.apply_rows(&mut h, k, k + 1, k.saturating_sub(1)..n);
                g.apply_rows(&mut q_left, k, k + 1, 0..n);
                if k > lo {
                    let gz = Rotation::zeroing_in_row(h[(k + 1, k)], h[(k + 1, k - 1)]);
                    gz.apply_cols(&mut h, k, k - 1, 0..n);
                    h[(k + 1, k - 1)] = C64::default();
                    gz.apply_cols(&mut t, k, k - 1, 0..n);
                    gz.apply_cols(&mut z_right, k, k - 1, 0..n);
                }
            }
            let gz = Rotation::zeroing_in_row(h[(hi, hi)], h[(hi, hi - 1)]);
            gz.apply_cols(&mut h, hi, hi - 1, 0..n);
            h[(hi, hi - 1)] = C64::default();
            gz.apply_cols(&mut t, hi, hi - 1, 0..n);
            gz.apply_cols(&mut z_right, hi, hi - 1, 0..n);
            for k in lo..hi {
                t[(k + 1, k)] = C64::default();
            }
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
            let sub = (h[(hi, hi - 1)] / t[(hi - 1, hi - 1)]).norm();
            h[(hi, hi)] / t[(hi, hi)] + c(0.75 * sub, 0.4375 * sub)
        } else {
            pencil_shift(&h, &t, hi)
        };

        let mut x = h[(lo, lo)] - mu * t[(lo, lo)];
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            if k > lo {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let g = Rotation::zeroing(x, y);
            g.apply_rows(&mut h, k, k + 1, k.saturating_sub(1).max(lo)..n);
            if k > lo {
                h[(k + 1, k - 1)] = C64::default();
            }
            g.apply_rows(&mut t, k, k + 1, k..n);
            g.apply_rows(&mut q_left, k, k + 1, 0..n);
            // t picked up fill at (k+1, k)
            let gz = Rotation::zeroing_in_row(t[(k + 1, k + 1)], t[(k + 1, k)]);
            gz.apply_cols(&mut t, k + 1, k, 0..k + 2);
            t[(k + 1, k)] = C64::default();
            let last = (k + 2).min(hi);
            gz.apply_cols(&mut h, k + 1, k, 0..last + 1);
            gz.apply_cols(&mut z_right, k + 1, k, 0..n);
        }
    }

    let factors = QzFactors {
        q_left,
        z_right,
        s: h,
        t,
    };
    let s_tol = (DEFLATION_TOL * h_norm).max(floor);
    for (i, ev) in factors.eigenvalues().iter().enumerate() {
        if ev.alpha.norm() <= s_tol && ev.beta.norm() <= t_tol {
            return Err(TsteinError::SingularPencil { index: i });
        }
    }
    Ok(factors)
}

/// Eigenvalue of the trailing 2x2 pencil closest to `h[hi][hi] / t[hi][hi]`.
fn pencil_shift(h: &DenseMatrix, t: &DenseMatrix, hi: usize) -> C64 {
    let k = hi - 1;
    // h2 · t2⁻¹ for the upper-triangular 2x2 block t2
    let (t11, t12, t22) = (t[(k, k)], t[(k, hi)], t[(hi, hi)]);
    let (h11, h12, h21, h22) = (h[(k, k)], h[(k, hi)], h[(hi, k)], h[(hi, hi)]);
    let i11 = t11.inv();
    let i22 = t22.inv();
    let i12 = -t12 * i11 * i22;
    let a = h11 * i11;
    let b = h11 * i12 + h12 * i22;
    let cc = h21 * i11;
    let d = h21 * i12 + h22 * i22;
    crate::kernel::schur::wilkinson_shift(a, b, cc, d)
}
