use thiserror::Error;

use crate::spectral::SpectrumReport;

pub type Result<T> = std::result::Result<T, TsteinError>;

/// Failures raised by the kernel, the solvers and the diagnostics.
#[derive(Debug, Error)]
pub enum TsteinError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must be non-empty")]
    Empty,

    #[error("eigenvalue iteration stalled at subdiagonal entry ({row}, {col}) after {iterations} sweeps")]
    NoConvergence {
        row: usize,
        col: usize,
        iterations: usize,
    },

    #[error("singular pencil: diagonal pair {index} has both entries below tolerance")]
    SingularPencil { index: usize },

    #[error("singular triangular system: diagonal entry {index} below tolerance")]
    SingularTriangular { index: usize },

    #[error("matrix is numerically rank deficient (rank {rank} of {size})")]
    RankDeficient { rank: usize, size: usize },

    #[error("equation is not uniquely solvable (margin {:.3e})", .0.margin)]
    Unsolvable(Box<SpectrumReport>),

    #[error("method not applicable: {0}")]
    MethodInapplicable(String),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("ill-separated spectra: selected and rejected eigenvalues are {distance:.3e} apart")]
    IllSeparatedSpectra { distance: f64 },

    #[error("singular back-substitution step at index {index}")]
    SingularStep { index: usize },

    #[error("pencil A - lambda B^T is numerically irregular for every candidate shift")]
    IrregularPencil,

    #[error("reduced equation solution fails the original equation: relative residual {relative_residual:.3e}")]
    ReductionNotEquivalent { relative_residual: f64 },

    #[error("relative bound undefined for a zero solution")]
    ZeroSolution,

    #[error("problem size n = {n} exceeds the cap {cap} for n^2-sized constructions")]
    TooLarge { n: usize, cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
