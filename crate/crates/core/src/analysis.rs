//! Residual, stopping criterion, backward-error inequality, condition number
//! and perturbation bounds for an approximate solution `Y` of
//! `X = A Xᵀ B + C`.
//!
//! With `α = ‖A‖_F`, `β = ‖B‖_F`, `γ = ‖C‖_F` and `Q = I − (Bᵀ⊗A)𝒫`:
//!
//! * stopping bound: `c·u·(1 + αβ)·‖X‖_F`
//! * backward inequality: `‖ℛ‖_F ≤ η(γ + ‖Y‖_F αβ (2 + η))`
//! * `κ(S) = ‖Q‖₂ ‖Q⁻¹‖₂`
//! * `Ψ = ‖Q⁻¹[α (XᵀB)ᵀ⊗I, β I⊗(AXᵀ), γ I]‖₂ / ‖X‖_F`, giving
//!   `‖δX‖_F / ‖X‖_F ≤ √3 Ψ ζ` to first order
//! * posterior: `‖Q⁻¹‖₂ ‖ℛ‖_F / ‖X̂‖_F`

use crate::error::{Result, TsteinError};
use crate::kernel::householder::QrFactorization;
use crate::kernel::kron::{unvec, vec};
use crate::kernel::norm::{operator_two_norm, two_norm};
use crate::matrix::{require_same_square, DenseMatrix, C64};
use crate::solvers::{stein_matrix, stein_residual};
use crate::spectral::require_solvable;

/// Unit roundoff of IEEE double precision, `2⁻⁵³`.
pub const UNIT_ROUNDOFF: f64 = 1.0 / 9_007_199_254_740_992.0;
/// Largest order for which the n²×n² coefficient matrix is formed.
pub const MAX_KRON_ORDER: usize = 64;

/// Default stopping-criterion constant `10 n²`.
pub fn default_cmn(n: usize) -> f64 {
    10.0 * (n * n) as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiBound {
    pub psi: f64,
}

impl PsiBound {
    /// `√3·Ψ·ζ`, the first-order bound on `‖δX‖_F/‖X‖_F` for relative data perturbations `ζ`.
    pub fn first_order_bound(&self, zeta: f64) -> f64 {
        3f64.sqrt() * self.psi * zeta
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub residual_fro: f64,
    pub stopping_bound: f64,
    pub kappa_s: Option<f64>,
    pub psi: Option<f64>,
    /// `√3·Ψ`, the first-order bound per unit relative perturbation.
    pub first_order_coefficient: Option<f64>,
    pub posterior_bound: Option<f64>,
    pub alpha_beta_gamma: (f64, f64, f64),
}

/// `‖Y − A Yᵀ B − C‖_F`.
pub fn residual(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, y: &DenseMatrix) -> Result<f64> {
    require_same_square(&[a, b, c, y])?;
    Ok(stein_residual(a, b, c, y).fro_norm())
}

/// `c_mn·u·(1 + ‖A‖_F‖B‖_F)·‖X‖_F`.
pub fn stopping_bound(a: &DenseMatrix, b: &DenseMatrix, x: &DenseMatrix, c_mn: f64, unit_roundoff: f64) -> f64 {
    c_mn * unit_roundoff * (1.0 + a.fro_norm() * b.fro_norm()) * x.fro_norm()
}

/// `η(γ + ‖Y‖_F·α·β·(2 + η))`.
pub fn backward_residual_bound(eta: f64, y: &DenseMatrix, (alpha, beta, gamma): (f64, f64, f64)) -> f64 {
    eta * (gamma + y.fro_norm() * alpha * beta * (2.0 + eta))
}

/// Factored `Q` with `Q⁻¹` available through solves.
struct SteinInverse {
    n: usize,
    q: DenseMatrix,
    qr: QrFactorization,
}

impl SteinInverse {
    fn new(a: &DenseMatrix, b: &DenseMatrix) -> Result<Self> {
        let n = require_same_square(&[a, b])?;
        if n > MAX_KRON_ORDER {
            return Err(TsteinError::TooLarge { n, cap: MAX_KRON_ORDER });
        }
        require_solvable(a, b)?;
        let q = stein_matrix(a, b)?;
        let qr = QrFactorization::new(&q, true);
        Ok(Self { n, q, qr })
    }

    fn column(v: &[C64]) -> DenseMatrix {
        DenseMatrix::column_vector(v)
    }

    fn inverse_norm(&self) -> Result<f64> {
        let nn = self.n * self.n;
        Ok(operator_two_norm(
            nn,
            |v| Ok(self.qr.solve(&Self::column(v))?.as_slice().to_vec()),
            |w| Ok(self.qr.solve_adjoint(&Self::column(w))?.as_slice().to_vec()),
        )?
        .value)
    }
}

/// `κ(S) = ‖Q‖₂·‖Q⁻¹‖₂` for `S(X) = X − A Xᵀ B`.
pub fn condition_kappa(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64> {
    let inv = SteinInverse::new(a, b)?;
    Ok((two_norm(&inv.q) * inv.inverse_norm()?).max(1.0))
}

/// `Ψ` for the solution `x`, computed by power iteration on the operator
/// `(δA, δB, δC) ↦ Q⁻¹ vec(α δA XᵀB + β AXᵀ δB + γ δC)`.
pub fn perturbation_psi(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, x: &DenseMatrix) -> Result<PsiBound> {
    let n = require_same_square(&[a, b, c, x])?;
    let x_norm = x.fro_norm();
    if x_norm == 0.0 {
        return Err(TsteinError::ZeroSolution);
    }
    let inv = SteinInverse::new(a, b)?;
    let (alpha, beta, gamma) = (a.fro_norm(), b.fro_norm(), c.fro_norm());
    let xtb = &x.transpose() * b;
    let axt = a * &x.transpose();
    let (xtb_h, axt_h) = (xtb.adjoint(), axt.adjoint());
    let nn = n * n;
    let block = |v: &[C64], k: usize| unvec(&DenseMatrix::column_vector(&v[k * nn..(k + 1) * nn]), n, n);
    let apply = |v: &[C64]| -> Result<Vec<C64>> {
        let (da, db, dc) = (block(v, 0)?, block(v, 1)?, block(v, 2)?);
        let y = &(&(&da * &xtb).scale_real(alpha) + &(&axt * &db).scale_real(beta)) + &dc.scale_real(gamma);
        Ok(inv.qr.solve(&vec(&y))?.as_slice().to_vec())
    };
    let apply_adjoint = |w: &[C64]| -> Result<Vec<C64>> {
        let z = unvec(&inv.qr.solve_adjoint(&DenseMatrix::column_vector(w))?, n, n)?;
        let mut out = Vec::with_capacity(3 * nn);
        out.extend_from_slice(vec(&(&z * &xtb_h).scale_real(alpha)).as_slice());
        out.extend_from_slice(vec(&(&axt_h * &z).scale_real(beta)).as_slice());
        out.extend_from_slice(vec(&z.scale_real(gamma)).as_slice());
        Ok(out)
    };
    let norm = operator_two_norm(3 * nn, apply, apply_adjoint)?;
    Ok(PsiBound {
        psi: norm.value / x_norm,
    })
}

/// `‖Q⁻¹‖₂·residual_fro/‖X̂‖_F`.
pub fn posterior_bound(a: &DenseMatrix, b: &DenseMatrix, x_hat: &DenseMatrix, residual_fro: f64) -> Result<f64> {
    require_same_square(&[a, b, x_hat])?;
    let x_norm = x_hat.fro_norm();
    if x_norm == 0.0 {
        return Err(TsteinError::ZeroSolution);
    }
    let inv = SteinInverse::new(a, b)?;
    Ok(inv.inverse_norm()? * residual_fro / x_norm)
}

/// Every diagnostic for the approximate solution `y`. The n²-sized
/// quantities are `None` above [`MAX_KRON_ORDER`], and the relative bounds
/// are `None` for `y = 0`.
pub fn error_report(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: &DenseMatrix,
    y: &DenseMatrix,
    c_mn: Option<f64>,
) -> Result<ErrorReport> {
    let n = require_same_square(&[a, b, c, y])?;
    let residual_fro = residual(a, b, c, y)?;
    let stopping = stopping_bound(a, b, y, c_mn.unwrap_or_else(|| default_cmn(n)), UNIT_ROUNDOFF);
    let optional = |r: Result<f64>| match r {
        Ok(v) => Ok(Some(v)),
        Err(TsteinError::TooLarge { .. } | TsteinError::ZeroSolution) => Ok(None),
        Err(e) => Err(e),
    };
    let kappa_s = optional(condition_kappa(a, b))?;
    let psi = optional(perturbation_psi(a, b, c, y).map(|p| p.psi))?;
    let posterior = optional(posterior_bound(a, b, y, residual_fro))?;
    Ok(ErrorReport {
        residual_fro,
        stopping_bound: stopping,
        kappa_s,
        psi,
        first_order_coefficient: psi.map(|p| 3f64.sqrt() * p),
        posterior_bound: posterior,
        alpha_beta_gamma: (a.fro_norm(), b.fro_norm(), c.fro_norm()),
    })
}
