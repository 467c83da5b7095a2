//! Dense linear-algebra substrate: Kronecker/vec machinery, QR, triangular
//! solves, complex Schur and QZ, and norm estimation.

pub mod householder;
pub mod kron;
pub mod norm;
pub mod qz;
pub mod rotation;
pub mod schur;
pub mod triangular;

pub use householder::{householder_qr, inverse, solve_linear, QrFactorization, Reflector};
pub use kron::{kron, perm_matrix, unvec, vec};
pub use norm::{min_singular_value, operator_two_norm, singular_values, two_norm, two_norm_estimate, NormEstimate};
pub use qz::{qz, GeneralizedEigenvalue, QzFactors};
pub use schur::{eigenvalues, hessenberg, schur, SchurFactors};
pub use triangular::{solve_triangular, Triangle};
