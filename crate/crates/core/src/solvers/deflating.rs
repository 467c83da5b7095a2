//! Solution from a deflating subspace of a 2n×2n pencil.
//!
//! Variant `Ml` uses
//!
//! ```text
//! ℳ = [BAᵀ   0]    ℒ = [I     0 ]
//!     [−CAᵀ  I]        [ACᵀ  ABᵀ]
//! ```
//!
//! whose spectrum is `σ(BAᵀ) ∪ σ(I − λABᵀ)`. The deflating subspace for
//! `σ(BAᵀ)` is spanned by `[I; XAᵀ]`, so `X = V₁U₁⁻¹A⁻ᵀ`. With
//! `Y = V₁U₁⁻¹ = XAᵀ` the same matrix is `X = YᵀB + C`, which is what is
//! evaluated.
//!
//! Variant `M1l1` uses `ℳ₁ = [AᵀB 0; −C−ACᵀB I]`, `ℒ₁ = [I 0; 0 ABᵀ]` with
//! `ℳ₁[I; X] = ℒ₁[I; X]AᵀB`, so `X = V₁U₁⁻¹` and `A` may be singular.

use crate::error::{Result, TsteinError};
use crate::kernel::householder::{solve_linear, QrFactorization};
use crate::kernel::qz::{qz, GeneralizedEigenvalue};
use crate::kernel::schur::eigenvalues;
use crate::matrix::{require_same_square, DenseMatrix, C64};
use crate::solvers::{Method, SolveOutcome};
use crate::spectral::{check_solvability, is_reciprocal_free};

/// Selected and rejected generalized eigenvalues closer than this (chordal) are ambiguous.
pub const SEPARATION_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PencilVariant {
    Ml,
    M1l1,
}

/// `ℳ[U₁; V₁] = [U₂; V₂]T₁` and `ℒ[U₁; V₁] = [U₂; V₂]T₂`.
#[derive(Clone, Debug)]
pub struct PencilDeflation {
    pub u1: DenseMatrix,
    pub v1: DenseMatrix,
    pub u2: DenseMatrix,
    pub v2: DenseMatrix,
    pub t1: DenseMatrix,
    pub t2: DenseMatrix,
}

pub fn build_pencil(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    variant: PencilVariant,
) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = require_same_square(&[a, b, c])?;
    let id = DenseMatrix::identity(n);
    let zero = DenseMatrix::zeros(n, n);
    let at = a.transpose();
    let abt = a * &b.transpose();
    Ok(match variant {
        PencilVariant::Ml => {
            let m = DenseMatrix::block2(&(b * &at), &zero, &-&(c * &at), &id);
            let l = DenseMatrix::block2(&id, &zero, &(a * &c.transpose()), &abt);
            (m, l)
        }
        PencilVariant::M1l1 => {
            let lower = -&(c + &(&(a * &c.transpose()) * b));
            let m = DenseMatrix::block2(&(&at * b), &zero, &lower, &id);
            let l = DenseMatrix::block2(&id, &zero, &zero, &abt);
            (m, l)
        }
    })
}

/// Deflating subspace of `(m, l)` for the generalized eigenvalues nearest to `targets`.
///
/// `U` blocks are the top halves of the bases, `V` blocks the bottom halves.
/// Each target claims the closest unclaimed eigenvalue in chordal distance;
/// the claimed pairs are then moved to the front of the generalized Schur form.
pub fn deflate_pencil(m: &DenseMatrix, l: &DenseMatrix, targets: &[GeneralizedEigenvalue]) -> Result<PencilDeflation> {
    let size = require_same_square(&[m, l])?;
    let k = targets.len();
    if k > size {
        return Err(TsteinError::DimensionMismatch(format!(
            "{k} target eigenvalues for a pencil of order {size}"
        )));
    }
    let mut f = qz(m, l)?;
    let eigs = f.eigenvalues();
    let mut select = vec![false; size];
    for t in targets {
        let best = (0..size)
            .filter(|&i| !select[i])
            .min_by(|&i, &j| eigs[i].chordal_distance_to(t).total_cmp(&eigs[j].chordal_distance_to(t)))
            .expect("fewer targets than eigenvalues");
        select[best] = true;
    }
    let mut separation = f64::INFINITY;
    for i in (0..size).filter(|&i| select[i]) {
        for j in (0..size).filter(|&j| !select[j]) {
            separation = separation.min(eigs[i].chordal_distance_to(&eigs[j]));
        }
    }
    if separation <= SEPARATION_TOL {
        return Err(TsteinError::IllSeparatedSpectra { distance: separation });
    }
    f.reorder(&select);
    let n = size / 2;
    let z1 = f.z_right.submatrix(0, size, 0, k);
    let w = f.q_left.adjoint().submatrix(0, size, 0, k);
    Ok(PencilDeflation {
        u1: z1.submatrix(0, n, 0, k),
        v1: z1.submatrix(n, size, 0, k),
        u2: w.submatrix(0, n, 0, k),
        v2: w.submatrix(n, size, 0, k),
        t1: f.s.submatrix(0, k, 0, k),
        t2: f.t.submatrix(0, k, 0, k),
    })
}

fn finite(values: Vec<C64>) -> Vec<GeneralizedEigenvalue> {
    values
        .into_iter()
        .map(|alpha| GeneralizedEigenvalue {
            alpha,
            beta: C64::new(1.0, 0.0),
        })
        .collect()
}

/// Solves by extracting the deflating subspace for `σ(BAᵀ)` (or `σ(AᵀB)`).
/// Requires `σ(AᵀB)` to be ⊤-reciprocal free, with `−1` excluded.
pub fn solve_deflating(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    variant: PencilVariant,
) -> Result<SolveOutcome> {
    let n = require_same_square(&[a, b, c])?;
    let report = check_solvability(a, b)?;
    if !report.uniquely_solvable {
        return Err(TsteinError::Unsolvable(Box::new(report)));
    }
    if !is_reciprocal_free(&report.base_eigenvalues, report.tolerance).0 {
        return Err(TsteinError::MethodInapplicable(
            "deflating-subspace solver needs a reciprocal-free spectrum; -1 is an eigenvalue of AᵀB".into(),
        ));
    }
    if variant == PencilVariant::Ml && QrFactorization::new(a, true).rank() < n {
        return Err(TsteinError::MethodInapplicable(
            "pencil variant ML needs a nonsingular A; use M1L1".into(),
        ));
    }
    let targets = match variant {
        PencilVariant::Ml => eigenvalues(&(b * &a.transpose()))?,
        PencilVariant::M1l1 => eigenvalues(&(&a.transpose() * b))?,
    };
    let (m, l) = build_pencil(a, b, c, variant)?;
    let d = deflate_pencil(&m, &l, &finite(targets))?;
    let breakdown = |e: TsteinError| match e {
        TsteinError::RankDeficient { .. } => {
            TsteinError::NumericalBreakdown("basis block U1 of the deflating subspace is singular".into())
        }
        other => other,
    };
    // Y = V₁U₁⁻¹ via U₁ᵀ Yᵀ = V₁ᵀ
    let y = solve_linear(&d.u1.transpose(), &d.v1.transpose()).map_err(breakdown)?.transpose();
    // ML yields Y = XAᵀ, so AXᵀB = YᵀB and X = YᵀB + C without inverting A
    let x = match variant {
        PencilVariant::Ml => &(&y.transpose() * b) + c,
        PencilVariant::M1l1 => y,
    };
    Ok(SolveOutcome::finish(a, b, c, x, Method::Deflating, 1, Vec::new(), true))
}
