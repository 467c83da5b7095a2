//! Reduction of `AX + XᵀB = C` to `X = A' Xᵀ B' + C'`.
//!
//! For scalars `a`, `b`, combining the equation with its transpose gives
//! `(aA + bBᵀ)X + Xᵀ(aB + bAᵀ) = aC + bCᵀ`. When `M = aA + bBᵀ` is invertible
//! this is `X + UXᵀV = D` with `U = M⁻¹`, `V = aB + bAᵀ`, `D = M⁻¹(aC + bCᵀ)`.
//! The reduction only runs in one direction, so every result is checked
//! against the original equation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TsteinError};
use crate::kernel::householder::inverse;
use crate::kernel::norm::min_singular_value;
use crate::matrix::{require_same_square, DenseMatrix};
use crate::solvers::{solve_direct, SolveOutcome};

/// Largest accepted `‖AX + XᵀB − C‖_F / ‖C‖_F`.
pub const EQUIVALENCE_TOL: f64 = 1e-8;
const RANDOM_SHIFTS: usize = 8;
const SHIFT_SEED: u64 = 0x7_5e1f;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shift {
    /// Try the candidate grid in order of decreasing `σ_min(aA + bBᵀ)`.
    Auto,
    Fixed(f64, f64),
}

#[derive(Clone, Debug)]
pub struct SylvesterOutcome {
    pub x: DenseMatrix,
    /// The `(a, b)` that produced `x`.
    pub shift: (f64, f64),
    /// `‖AX + XᵀB − C‖_F`.
    pub residual_fro: f64,
    /// Outcome of the reduced equation `X = (−U) Xᵀ V + D`.
    pub reduced: SolveOutcome,
    /// Shifts tried before `shift`, with the reason each was rejected.
    pub rejected: Vec<((f64, f64), String)>,
}

/// `AX + XᵀB − C`.
pub fn sylvester_residual(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, x: &DenseMatrix) -> DenseMatrix {
    &(&(a * x) + &(&x.transpose() * b)) - c
}

fn candidate_grid() -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SHIFT_SEED);
    let mut grid = vec![(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];
    grid.extend((0..RANDOM_SHIFTS).map(|_| (1.0, rng.random_range(-2.0..=2.0))));
    grid
}

fn combine(x: &DenseMatrix, y: &DenseMatrix, s: f64, t: f64) -> DenseMatrix {
    &x.scale_real(s) + &y.scale_real(t)
}

fn attempt(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, s: f64, t: f64) -> Result<SylvesterOutcome> {
    let m = combine(a, &b.transpose(), s, t);
    let u = inverse(&m).map_err(|_| TsteinError::IrregularPencil)?;
    let v = combine(b, &a.transpose(), s, t);
    let d = &u * &combine(c, &c.transpose(), s, t);
    let reduced = solve_direct(&-&u, &v, &d)?;
    let x = reduced.x.clone();
    let residual_fro = sylvester_residual(a, b, c, &x).fro_norm();
    let c_norm = c.fro_norm();
    if residual_fro > EQUIVALENCE_TOL * c_norm {
        return Err(TsteinError::ReductionNotEquivalent {
            relative_residual: if c_norm > 0.0 { residual_fro / c_norm } else { f64::INFINITY },
        });
    }
    Ok(SylvesterOutcome {
        x,
        shift: (s, t),
        residual_fro,
        reduced,
        rejected: Vec::new(),
    })
}

/// Solves `AX + XᵀB = C` through the ⊤-Stein reduction.
///
/// With [`Shift::Auto`] the candidates `(1,0), (0,1), (1,1), (1,−1)` and
/// `(1,t)` for eight fixed pseudo-random `t ∈ [−2, 2]` are tried best first.
/// A candidate whose `aA + bBᵀ` or reduced equation is singular is skipped;
/// note `a = ±b` always gives a singular reduced equation for `n ≥ 2`.
/// Errors with [`TsteinError::IrregularPencil`] if no candidate yields a
/// reduced solution, or [`TsteinError::ReductionNotEquivalent`] if the
/// reduced solutions all fail the original equation.
pub fn solve_t_sylvester(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, shift: Shift) -> Result<SylvesterOutcome> {
    require_same_square(&[a, b, c])?;
    let candidates = match shift {
        Shift::Fixed(s, t) => vec![(s, t)],
        Shift::Auto => {
            let mut scored: Vec<(f64, (f64, f64))> = candidate_grid()
                .into_iter()
                .map(|(s, t)| (min_singular_value(&combine(a, &b.transpose(), s, t)), (s, t)))
                .collect();
            scored.sort_by(|x, y| y.0.total_cmp(&x.0));
            scored.into_iter().map(|(_, st)| st).collect()
        }
    };
    let scale = a.fro_norm().max(b.fro_norm()).max(f64::MIN_POSITIVE);
    let mut rejected = Vec::new();
    let mut not_equivalent = None;
    for (s, t) in candidates {
        let m = combine(a, &b.transpose(), s, t);
        if min_singular_value(&m) <= 1e-12 * scale * s.abs().max(t.abs()) {
            rejected.push(((s, t), TsteinError::IrregularPencil.to_string()));
            continue;
        }
        match attempt(a, b, c, s, t) {
            Ok(mut out) => {
                out.rejected = rejected;
                return Ok(out);
            }
            Err(e @ TsteinError::ReductionNotEquivalent { .. }) => {
                rejected.push(((s, t), e.to_string()));
                not_equivalent.get_or_insert(e);
            }
            Err(
                e @ (TsteinError::Unsolvable(_)
                | TsteinError::RankDeficient { .. }
                | TsteinError::IrregularPencil),
            ) => rejected.push(((s, t), e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Err(not_equivalent.unwrap_or(TsteinError::IrregularPencil))
}
