//! Benchmark fixtures shared by the criterion benches.

use tstein_core::analysis::{default_cmn, UNIT_ROUNDOFF};
use tstein_core::{generate_problem, ProblemBundle, Profile};

pub const SIZES: [usize; 4] = [4, 8, 16, 32];

/// Contractive problem of order `n`, fixed seed.
pub fn contractive(n: usize) -> ProblemBundle {
    generate_problem(n, 0xbe7c, Profile::Contractive).expect("contractive generator")
}

/// Stopping tolerance `10n²·u` used by the iterative methods.
pub fn iterative_tol(n: usize) -> f64 {
    default_cmn(n) * UNIT_ROUNDOFF
}
