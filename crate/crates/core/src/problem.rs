//! Deterministic test problems.
//!
//! Apart from `contractive`, each profile fixes `σ(AᵀB)` through a triangular
//! construction `A = U R Vᵀ`, `B = U L Vᵀ` with `R` upper and `L` lower
//! triangular, so that `AᵀB = V Rᵀ L Vᵀ` has eigenvalues `R[i][i]·L[i][i]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, TsteinError};
use crate::kernel::householder::householder_qr;
use crate::kernel::schur::eigenvalues;
use crate::matrix::{re, DenseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Gaussian `A`, `B` scaled so that `ρ(ABᵀ) = 0.5`.
    Contractive,
    /// Eigenvalues of `AᵀB` drawn from `±[0.05, 0.3] ∪ ±[1.2, 2.5]`.
    WellSeparated,
    /// A planted pair `λᵢλⱼ = 1 + 10⁻⁶`.
    NearSingular,
    /// Exactly one eigenvalue `−1`.
    MinusOneSimple,
}

impl Profile {
    pub const ALL: [Profile; 4] = [
        Profile::Contractive,
        Profile::WellSeparated,
        Profile::NearSingular,
        Profile::MinusOneSimple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Contractive => "contractive",
            Profile::WellSeparated => "well-separated",
            Profile::NearSingular => "near-singular",
            Profile::MinusOneSimple => "minus-one-simple",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match key.as_str() {
            "contractive" => Ok(Profile::Contractive),
            "wellseparated" => Ok(Profile::WellSeparated),
            "nearsingular" => Ok(Profile::NearSingular),
            "minusonesimple" => Ok(Profile::MinusOneSimple),
            _ => Err(format!(
                "unknown profile {s:?} (expected contractive, well-separated, near-singular or minus-one-simple)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProblemBundle {
    pub name: String,
    pub seed: u64,
    pub profile: Profile,
    pub a: DenseMatrix,
    pub b: DenseMatrix,
    pub c: DenseMatrix,
    pub parameters: BTreeMap<String, f64>,
}

impl ProblemBundle {
    pub fn n(&self) -> usize {
        self.a.rows()
    }
}

/// Planted gap of the near-singular profile.
pub const NEAR_SINGULAR_GAP: f64 = 1e-6;
pub const CONTRACTIVE_RADIUS: f64 = 0.5;

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| re(rng.sample(StandardNormal)))
}

fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    householder_qr(&gaussian(rng, n, n)).0
}

fn small(rng: &mut ChaCha8Rng) -> f64 {
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    sign * rng.random_range(0.05..=0.3)
}

fn large(rng: &mut ChaCha8Rng) -> f64 {
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    sign * rng.random_range(1.2..=2.5)
}

/// `A = U R Vᵀ`, `B = U L Vᵀ` with `R[i][i]·L[i][i] = eigs[i]`.
fn planted(rng: &mut ChaCha8Rng, eigs: &[f64]) -> (DenseMatrix, DenseMatrix) {
    let n = eigs.len();
    let mut r = DenseMatrix::zeros(n, n);
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let d: f64 = rng.random_range(0.5..=1.5);
        r[(i, i)] = re(d);
        l[(i, i)] = re(eigs[i] / d);
        for j in i + 1..n {
            r[(i, j)] = re(0.3 * rng.sample::<f64, _>(StandardNormal));
            l[(j, i)] = re(0.3 * rng.sample::<f64, _>(StandardNormal));
        }
    }
    let u = orthogonal(rng, n);
    let v = orthogonal(rng, n).transpose();
    (&(&u * &r) * &v, &(&u * &l) * &v)
}

/// Deterministic problem of order `n` for the given seed and profile.
pub fn generate_problem(n: usize, seed: u64, profile: Profile) -> Result<ProblemBundle> {
    if n == 0 {
        return Err(TsteinError::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (profile as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut parameters = BTreeMap::new();
    let (a, b) = match profile {
        Profile::Contractive => {
            let a = gaussian(&mut rng, n, n);
            let b = gaussian(&mut rng, n, n);
            let rho = eigenvalues(&(&a * &b.transpose()))?
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            parameters.insert("spectral_radius".into(), CONTRACTIVE_RADIUS);
            if rho == 0.0 {
                (a, b)
            } else {
                let s = (CONTRACTIVE_RADIUS / rho).sqrt();
                (a.scale_real(s), b.scale_real(s))
            }
        }
        Profile::WellSeparated => {
            let eigs: Vec<f64> = (0..n)
                .map(|_| if rng.random_bool(0.5) { small(&mut rng) } else { large(&mut rng) })
                .collect();
            planted(&mut rng, &eigs)
        }
        Profile::NearSingular => {
            parameters.insert("gap".into(), NEAR_SINGULAR_GAP);
            let eigs: Vec<f64> = if n == 1 {
                vec![(1.0 + NEAR_SINGULAR_GAP).sqrt()]
            } else {
                let mut e = vec![2.0, (1.0 + NEAR_SINGULAR_GAP) / 2.0];
                e.extend((2..n).map(|_| small(&mut rng)));
                e
            };
            planted(&mut rng, &eigs)
        }
        Profile::MinusOneSimple => {
            if n == 1 {
                (DenseMatrix::from_rows(&[[-1.0]]), DenseMatrix::from_rows(&[[1.0]]))
            } else {
                let mut e = vec![-1.0];
                e.extend((1..n).map(|_| if rng.random_bool(0.5) { small(&mut rng) } else { large(&mut rng) }));
                planted(&mut rng, &e)
            }
        }
    };
    let c = gaussian(&mut rng, n, n);
    Ok(ProblemBundle {
        name: format!("{}-n{n}-s{seed}", profile.name()),
        seed,
        profile,
        a,
        b,
        c,
        parameters,
    })
}
