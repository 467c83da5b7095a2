//! Five solvers for `X = A Xᵀ B + C` sharing one outcome type, plus the
//! reduction of `AX + XᵀB = C` to that form.

mod bartels_stewart;
mod cg;
mod deflating;
mod direct;
mod smith;
mod sylvester;

use std::fmt;

use crate::matrix::DenseMatrix;

pub use bartels_stewart::solve_bartels_stewart;
pub use cg::{solve_cg, solve_cg_from, stein_adjoint, stein_operator};
pub use deflating::{build_pencil, deflate_pencil, solve_deflating, PencilDeflation, PencilVariant};
pub use direct::{solve_direct, stein_matrix};
pub use smith::{solve_smith, SMITH_MAX_ITERATIONS};
pub use sylvester::{solve_t_sylvester, sylvester_residual, Shift, SylvesterOutcome};

/// Default relative-residual tolerance for the iterative methods.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    BartelsStewart,
    Smith,
    Cg,
    Deflating,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Direct,
        Method::BartelsStewart,
        Method::Smith,
        Method::Cg,
        Method::Deflating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::BartelsStewart => "bartels-stewart",
            Method::Smith => "smith",
            Method::Cg => "cg",
            Method::Deflating => "deflating",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub x: DenseMatrix,
    pub method: Method,
    pub iterations: usize,
    /// `‖X − A Xᵀ B − C‖_F` for the returned `x`.
    pub residual_fro: f64,
    /// Relative residuals `‖R_k‖_F / ((1 + ‖A‖_F‖B‖_F)‖X_k‖_F)`, one per iteration.
    pub trace: Vec<f64>,
    /// False when an iterative method hit its cap first.
    pub converged: bool,
}

impl SolveOutcome {
    pub(crate) fn finish(
        a: &DenseMatrix,
        b: &DenseMatrix,
        c: &DenseMatrix,
        x: DenseMatrix,
        method: Method,
        iterations: usize,
        trace: Vec<f64>,
        converged: bool,
    ) -> Self {
        let residual_fro = stein_residual(a, b, c, &x).fro_norm();
        Self {
            x,
            method,
            iterations,
            residual_fro,
            trace,
            converged,
        }
    }
}

/// `X − A Xᵀ B − C`.
pub fn stein_residual(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, x: &DenseMatrix) -> DenseMatrix {
    &(x - &(&(a * &x.transpose()) * b)) - c
}

/// Residual norm scaled as in the stopping criterion; `‖C‖_F` stands in for a zero iterate.
pub(crate) fn relative_residual(r_norm: f64, ab: f64, x_norm: f64, c_norm: f64) -> f64 {
    if r_norm == 0.0 {
        return 0.0;
    }
    if x_norm > 0.0 {
        r_norm / ((1.0 + ab) * x_norm)
    } else if c_norm > 0.0 {
        r_norm / c_norm
    } else {
        f64::INFINITY
    }
}
