//! Dense solvers and diagnostics for the transpose-Stein matrix equation
//!
//! ```text
//! X = A Xᵀ B + C
//! ```
//!
//! where `ᵀ` is the plain (non-conjugating) transpose. The crate decides unique
//! solvability from the spectrum of `AᵀB`, solves by five independent methods,
//! reduces `AX + XᵀB = C` to the same form, and reports residual, backward-error
//! and perturbation quantities.

pub mod analysis;
pub mod error;
pub mod io;
pub mod kernel;
pub mod matrix;
pub mod pqz;
pub mod problem;
pub mod solvers;
pub mod spectral;

pub use analysis::{
    backward_residual_bound, condition_kappa, error_report, perturbation_psi, posterior_bound, residual,
    stopping_bound, ErrorReport, PsiBound,
};
pub use error::{Result, TsteinError};
pub use io::{read_matrix, read_matrix_from, write_matrix, write_matrix_to};
pub use kernel::{kron, perm_matrix, qz, schur, solve_triangular, two_norm, unvec, vec, QzFactors, SchurFactors, Triangle};
pub use matrix::{DenseMatrix, C64};
pub use pqz::{pqz_decompose, PqzFactors};
pub use problem::{generate_problem, ProblemBundle, Profile};
pub use solvers::{
    build_pencil, solve_bartels_stewart, solve_cg, solve_deflating, solve_direct, solve_smith, solve_t_sylvester,
    Method, PencilDeflation, PencilVariant, Shift, SolveOutcome,
};
pub use spectral::{check_solvability, induced_spectrum, is_reciprocal_free, SpectrumReport};
