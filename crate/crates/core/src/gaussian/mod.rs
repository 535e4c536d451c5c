//! Quadrature-space linear algebra for Gaussian states.
//!
//! Everything here works on real matrices in the `(x, p)` quadrature basis
//! with vacuum variance 1/2. The five-mode layout used by the ring model is
//! fixed by [`Mode`], but the numerical kernels accept any dimension.

mod lyapunov;
mod routh;
mod stability;
mod symplectic;

use nalgebra::DMatrix;
use thiserror::Error;

pub use lyapunov::{lyapunov_residual, solve_lyapunov, solve_lyapunov_formal};
pub use routh::{characteristic_polynomial, routh_hurwitz, routh_table, RouthReport};
pub use stability::{eigenvalues, is_stable, StabilityReport};
pub use symplectic::{min_symplectic_eigenvalue, partial_transpose, symplectic_eigenvalues};

pub type Result<T> = std::result::Result<T, GaussianError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussianError {
    #[error("drift matrix is not Hurwitz-stable (spectral abscissa {abscissa:e} rad/s)")]
    NotStable { abscissa: f64 },
    #[error("Lyapunov system is singular or numerically marginal")]
    SingularSystem,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    WrongShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("diffusion matrix must be diagonal with non-negative entries")]
    InvalidDiffusion,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),
}

/// Number of bosonic modes in the ring system.
pub const NUM_MODES: usize = 5;
/// Length of the quadrature vector.
pub const DIM: usize = 2 * NUM_MODES;

/// Bosonic modes in quadrature-vector order: `[c, m1, b1, m2, b2]`.
///
/// Mode `k` owns indices `2k` (amplitude / position) and `2k + 1`
/// (phase / momentum).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Cavity,
    Magnon1,
    Phonon1,
    Magnon2,
    Phonon2,
}

impl Mode {
    pub const ALL: [Mode; NUM_MODES] = [
        Mode::Cavity,
        Mode::Magnon1,
        Mode::Phonon1,
        Mode::Magnon2,
        Mode::Phonon2,
    ];

    pub fn slot(self) -> usize {
        match self {
            Mode::Cavity => 0,
            Mode::Magnon1 => 1,
            Mode::Phonon1 => 2,
            Mode::Magnon2 => 3,
            Mode::Phonon2 => 4,
        }
    }

    /// Index of the first quadrature of this mode.
    pub fn offset(self) -> usize {
        2 * self.slot()
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Cavity => "c",
            Mode::Magnon1 => "m1",
            Mode::Phonon1 => "b1",
            Mode::Magnon2 => "m2",
            Mode::Phonon2 => "b2",
        }
    }

    pub fn from_label(label: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.label() == label)
    }

    /// The mode with subsystems 1 and 2 exchanged.
    pub fn exchanged(self) -> Mode {
        match self {
            Mode::Magnon1 => Mode::Magnon2,
            Mode::Magnon2 => Mode::Magnon1,
            Mode::Phonon1 => Mode::Phonon2,
            Mode::Phonon2 => Mode::Phonon1,
            Mode::Cavity => Mode::Cavity,
        }
    }
}

/// Block-diagonal symplectic form with `[[0, 1], [-1, 0]]` blocks.
pub fn symplectic_form(modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

fn check_square(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(GaussianError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(GaussianError::NonFinite);
    }
    Ok(())
}

/// Largest entrywise asymmetry `|m_ij - m_ji|`.
pub(crate) fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

pub(crate) fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    let tol = 1e-9 * m.amax().max(1.0);
    let asym = asymmetry(m);
    if asym > tol {
        return Err(GaussianError::NotSymmetric(asym));
    }
    Ok(())
}

/// Drift matrix of a linear quantum Langevin system, `dX/dt = A X + noise`.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix(DMatrix<f64>);

impl DriftMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        check_square(&m)?;
        Ok(DriftMatrix(m))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// Diagonal, non-negative noise-injection matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionMatrix(DMatrix<f64>);

impl DiffusionMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        check_square(&m)?;
        let n = m.nrows();
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)];
                if (i == j && x < 0.0) || (i != j && x != 0.0) {
                    return Err(GaussianError::InvalidDiffusion);
                }
            }
        }
        Ok(DiffusionMatrix(m))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(
            diag,
        )))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// Symmetric covariance matrix, `V_ij = <{X_i, X_j}>/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        check_square(&m)?;
        if !m.nrows().is_multiple_of(2) {
            return Err(GaussianError::OddDimension(m.nrows()));
        }
        check_symmetric(&m)?;
        Ok(CovarianceMatrix(m))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }

    pub fn min_symplectic_eigenvalue(&self) -> Result<f64> {
        min_symplectic_eigenvalue(&self.0)
    }
}
