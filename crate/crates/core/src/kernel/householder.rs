//! Householder reflectors and QR factorizations (plain and column-pivoted).

use crate::error::{Result, TsteinError};
use crate::matrix::{re, DenseMatrix, C64};

/// Elementary reflector `H = I − tau·v·vᴴ` with `H x = alpha e₁`.
#[derive(Clone, Debug)]
pub struct Reflector {
    pub v: Vec<C64>,
    pub tau: f64,
    pub alpha: C64,
}

impl Reflector {
    pub fn new(x: &[C64]) -> Self {
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Self {
                v: vec![C64::default(); x.len()],
                tau: 0.0,
                alpha: C64::default(),
            };
        }
        let phase = if x[0].norm() == 0.0 {
            re(1.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * norm;
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = if vv == 0.0 { 0.0 } else { 2.0 / vv };
        Self { v, tau, alpha }
    }

    /// `y ← H y` for a vector slice of matching length.
    pub fn apply(&self, y: &mut [C64]) {
        if self.tau == 0.0 {
            return;
        }
        let dot: C64 = self.v.iter().zip(y.iter()).map(|(v, y)| v.conj() * y).sum();
        let s = dot * self.tau;
        for (yi, vi) in y.iter_mut().zip(&self.v) {
            *yi -= vi * s;
        }
    }

    /// `M[offset.., cols] ← H M[offset.., cols]` for every column of `m`.
    pub fn apply_left(&self, m: &mut DenseMatrix, offset: usize) {
        if self.tau == 0.0 {
            return;
        }
        let k = self.v.len();
        for j in 0..m.cols() {
            let mut dot = C64::default();
            for i in 0..k {
                dot += self.v[i].conj() * m[(offset + i, j)];
            }
            let s = dot * self.tau;
            for i in 0..k {
                let vi = self.v[i];
                m[(offset + i, j)] -= vi * s;
            }
        }
    }

    /// `M[rows, offset..] ← M[rows, offset..] H` for every row of `m`.
    pub fn apply_right(&self, m: &mut DenseMatrix, offset: usize) {
        if self.tau == 0.0 {
            return;
        }
        let k = self.v.len();
        for i in 0..m.rows() {
            let mut dot = C64::default();
            for j in 0..k {
                dot += m[(i, offset + j)] * self.v[j];
            }
            let s = dot * self.tau;
            for j in 0..k {
                let vj = self.v[j].conj();
                m[(i, offset + j)] -= s * vj;
            }
        }
    }
}

/// Householder QR with optional column pivoting: `A Π = Q R`.
#[derive(Clone, Debug)]
pub struct QrFactorization {
    reflectors: Vec<Reflector>,
    r: DenseMatrix,
    perm: Vec<usize>,
    rows: usize,
    cols: usize,
}

impl QrFactorization {
    pub fn new(a: &DenseMatrix, pivoting: bool) -> Self {
        let (m, n) = a.shape();
        let mut r = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let steps = m.min(n);
        let mut reflectors = Vec::with_capacity(steps);
        for k in 0..steps {
            if pivoting {
                let mut best = k;
                let mut best_norm = -1.0;
                for j in k..n {
                    let s: f64 = (k..m).map(|i| r[(i, j)].norm_sqr()).sum();
                    if s > best_norm {
                        best_norm = s;
                        best = j;
                    }
                }
                if best != k {
                    perm.swap(k, best);
                    for i in 0..m {
                        let t = r[(i, k)];
                        r[(i, k)] = r[(i, best)];
                        r[(i, best)] = t;
                    }
                }
            }
            let x: Vec<C64> = (k..m).map(|i| r[(i, k)]).collect();
            let h = Reflector::new(&x);
            // apply to the trailing columns only; column k becomes alpha e1
            for j in k + 1..n {
                let mut col: Vec<C64> = (k..m).map(|i| r[(i, j)]).collect();
                h.apply(&mut col);
                for (i, v) in col.into_iter().enumerate() {
                    r[(k + i, j)] = v;
                }
            }
            if h.tau != 0.0 {
                r[(k, k)] = h.alpha;
            }
            for i in k + 1..m {
                r[(i, k)] = C64::default();
            }
            reflectors.push(h);
        }
        Self {
            reflectors,
            r,
            perm,
            rows: m,
            cols: n,
        }
    }

    pub fn r(&self) -> &DenseMatrix {
        &self.r
    }

    /// Column permutation: position `k` of `A Π` holds column `perm()[k]` of `A`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Full m×m unitary factor.
    pub fn q(&self) -> DenseMatrix {
        let mut q = DenseMatrix::identity(self.rows);
        for (k, h) in self.reflectors.iter().enumerate().rev() {
            h.apply_left(&mut q, k);
        }
        q
    }

    /// Numerical rank from the diagonal of R relative to its leading entry.
    pub fn rank(&self) -> usize {
        let steps = self.rows.min(self.cols);
        if steps == 0 {
            return 0;
        }
        let lead = self.r[(0, 0)].norm();
        if lead == 0.0 {
            return 0;
        }
        let tol = (self.rows.max(self.cols) as f64) * f64::EPSILON * lead;
        (0..steps).filter(|&k| self.r[(k, k)].norm() > tol).count()
    }

    fn require_full_rank(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(TsteinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let rank = self.rank();
        if rank < self.cols {
            return Err(TsteinError::RankDeficient {
                rank,
                size: self.cols,
            });
        }
        Ok(())
    }

    /// Solves `A x = b` for every column of `b` (square, full-rank `A`).
    pub fn solve(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        self.require_full_rank()?;
        let n = self.cols;
        if b.rows() != n {
            return Err(TsteinError::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                b.rows()
            )));
        }
        let mut y = b.clone();
        for (k, h) in self.reflectors.iter().enumerate() {
            h.apply_left(&mut y, k);
        }
        let z = back_substitute_upper(&self.r, &y);
        let mut x = DenseMatrix::zeros(n, b.cols());
        for k in 0..n {
            for j in 0..b.cols() {
                x[(self.perm[k], j)] = z[(k, j)];
            }
        }
        Ok(x)
    }

    /// Solves `Aᴴ y = w` for every column of `w`.
    pub fn solve_adjoint(&self, w: &DenseMatrix) -> Result<DenseMatrix> {
        self.require_full_rank()?;
        let n = self.cols;
        if w.rows() != n {
            return Err(TsteinError::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                w.rows()
            )));
        }
        let permuted = DenseMatrix::from_fn(n, w.cols(), |k, j| w[(self.perm[k], j)]);
        let rh = self.r.adjoint();
        let mut t = forward_substitute_lower(&rh, &permuted);
        for (k, h) in self.reflectors.iter().enumerate().rev() {
            h.apply_left(&mut t, k);
        }
        Ok(t)
    }
}

fn back_substitute_upper(r: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = r.rows();
    let mut x = b.clone();
    for j in 0..b.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in i + 1..n {
                s -= r[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / r[(i, i)];
        }
    }
    x
}

fn forward_substitute_lower(l: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = l.rows();
    let mut x = b.clone();
    for j in 0..b.cols() {
        for i in 0..n {
            let mut s = x[(i, j)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / l[(i, i)];
        }
    }
    x
}

/// Unpivoted QR returning the full unitary factor and R.
pub fn householder_qr(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let f = QrFactorization::new(a, false);
    (f.q(), f.r)
}

/// Solves the square system `a x = b` by column-pivoted QR.
pub fn solve_linear(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.require_square()?;
    QrFactorization::new(a, true).solve(b)
}

pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.require_square()?;
    solve_linear(a, &DenseMatrix::identity(n))
}
