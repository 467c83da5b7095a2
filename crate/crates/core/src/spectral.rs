//! Solvability of `X = A Xᵀ B + C` from the spectrum of `AᵀB`.
//!
//! The coefficient matrix of the vectorized equation is `I − (Bᵀ⊗A)𝒫`, and the
//! eigenvalues of `(Bᵀ⊗A)𝒫` are `λᵢ` together with `±√(λᵢλⱼ)` for `i < j`,
//! where `λᵢ` runs over `σ(AᵀB)`. The equation is uniquely solvable exactly
//! when `σ(AᵀB) ∖ {−1}` is ⊤-reciprocal free and `−1` is at most simple.

use crate::error::{Result, TsteinError};
use crate::kernel::schur::eigenvalues;
use crate::matrix::{require_same_square, DenseMatrix, C64};

/// Default relative tolerance for `λᵢλⱼ ≈ 1`.
pub const RECIPROCAL_TOL: f64 = 1e-10;
/// Radius of the `−1` cluster relative to the largest eigenvalue magnitude.
pub const MINUS_ONE_RADIUS: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    /// `σ(AᵀB)` with multiplicity.
    pub base_eigenvalues: Vec<C64>,
    /// `σ((Bᵀ⊗A)𝒫)`, exactly `n²` values.
    pub induced_eigenvalues: Vec<C64>,
    /// Index pairs `i ≤ j` with `λᵢλⱼ ≈ 1`.
    pub reciprocal_violations: Vec<(usize, usize)>,
    pub minus_one_multiplicity: usize,
    pub uniquely_solvable: bool,
    /// `min |λᵢλⱼ − 1|` over the pairs that matter for the verdict.
    pub margin: f64,
    pub tolerance: f64,
}

/// `{λᵢ} ∪ {±√(λᵢλⱼ) : i < j}` with the principal square root.
pub fn induced_spectrum(base: &[C64]) -> Vec<C64> {
    let n = base.len();
    let mut out = Vec::with_capacity(n * n);
    out.extend_from_slice(base);
    for i in 0..n {
        for j in i + 1..n {
            let r = (base[i] * base[j]).sqrt();
            out.push(r);
            out.push(-r);
        }
    }
    out
}

fn reciprocal_pair(x: C64, y: C64, tol: f64) -> bool {
    let big = 1.0 / tol;
    let (ax, ay) = (x.norm(), y.norm());
    // 0 and ∞ are reciprocals of each other
    if (ax > big && ay <= tol) || (ay > big && ax <= tol) {
        return true;
    }
    let p = x * y;
    (p - 1.0).norm() <= tol * (1.0 + p.norm())
}

/// Tests the set for ⊤-reciprocal freeness, pairs `i = j` included.
/// Returns the verdict and the violating index pairs `(i, j)`, `i ≤ j`.
pub fn is_reciprocal_free(eigs: &[C64], tolerance: f64) -> (bool, Vec<(usize, usize)>) {
    let mut violations = Vec::new();
    for i in 0..eigs.len() {
        for j in i..eigs.len() {
            if reciprocal_pair(eigs[i], eigs[j], tolerance) {
                violations.push((i, j));
            }
        }
    }
    (violations.is_empty(), violations)
}

/// Indices of eigenvalues in the cluster around `−1`.
fn minus_one_cluster(eigs: &[C64]) -> Vec<usize> {
    let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = MINUS_ONE_RADIUS * scale.max(1.0);
    (0..eigs.len()).filter(|&i| (eigs[i] + 1.0).norm() <= radius).collect()
}

/// Verdict from a base spectrum alone.
pub fn spectrum_report(base: Vec<C64>, tolerance: f64) -> SpectrumReport {
    let cluster = minus_one_cluster(&base);
    let in_cluster = |i: usize| cluster.contains(&i);
    let (_, violations) = is_reciprocal_free(&base, tolerance);
    let simple = cluster.len() <= 1;
    // a simple −1 may pair with itself; anything else is fatal
    let fatal = violations.iter().any(|&(i, j)| !(i == j && simple && in_cluster(i)));
    let mut margin = f64::INFINITY;
    for i in 0..base.len() {
        for j in i..base.len() {
            if i == j && simple && in_cluster(i) {
                continue;
            }
            margin = margin.min((base[i] * base[j] - 1.0).norm());
        }
    }
    SpectrumReport {
        induced_eigenvalues: induced_spectrum(&base),
        base_eigenvalues: base,
        reciprocal_violations: violations,
        minus_one_multiplicity: cluster.len(),
        uniquely_solvable: simple && !fatal,
        margin,
        tolerance,
    }
}

/// Solvability report for the pair `(a, b)` at the default tolerance.
pub fn check_solvability(a: &DenseMatrix, b: &DenseMatrix) -> Result<SpectrumReport> {
    check_solvability_with_tol(a, b, RECIPROCAL_TOL)
}

pub fn check_solvability_with_tol(a: &DenseMatrix, b: &DenseMatrix, tolerance: f64) -> Result<SpectrumReport> {
    require_same_square(&[a, b])?;
    let base = eigenvalues(&(&a.transpose() * b))?;
    Ok(spectrum_report(base, tolerance))
}

/// Fails with [`TsteinError::Unsolvable`] unless the pair is uniquely solvable.
pub fn require_solvable(a: &DenseMatrix, b: &DenseMatrix) -> Result<SpectrumReport> {
    let report = check_solvability(a, b)?;
    if report.uniquely_solvable {
        Ok(report)
    } else {
        Err(TsteinError::Unsolvable(Box::new(report)))
    }
}

/// Minimum-cost perfect matching between two equal-length multisets under
/// `|xᵢ − yⱼ|`. Returns `p` with `x[i]` paired to `y[p[i]]`, and the largest
/// paired distance.
pub fn optimal_pairing(x: &[C64], y: &[C64]) -> Result<(Vec<usize>, f64)> {
    if x.len() != y.len() {
        return Err(TsteinError::DimensionMismatch(format!(
            "multisets of sizes {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    let cost = |i: usize, j: usize| (x[i - 1] - y[j - 1]).norm();
    // Hungarian method with potentials, 1-based with a sentinel column 0
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut p = vec![0usize; n];
    for j in 1..=n {
        p[owner[j] - 1] = j - 1;
    }
    let worst = (0..n).map(|i| (x[i] - y[p[i]]).norm()).fold(0.0, f64::max);
    Ok((p, worst))
}
