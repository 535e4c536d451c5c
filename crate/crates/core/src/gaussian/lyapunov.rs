//! Continuous Lyapunov equation `A V + V Aᵀ + D = 0`.
//!
//! Solved by Kronecker vectorisation, `(I ⊗ A + A ⊗ I) vec V = -vec D`,
//! as one dense LU solve. At the 10x10 scale of the ring model this is a
//! 100x100 system, so the O(n⁶) cost does not matter.

use nalgebra::{DMatrix, DVector};

use super::{is_stable, CovarianceMatrix, DiffusionMatrix, DriftMatrix, GaussianError, Result};

/// Relative pivot size below which the Kronecker system counts as singular.
const PIVOT_TOL: f64 = 1e-14;

/// Stationary covariance of a Hurwitz-stable linear system.
pub fn solve_lyapunov(drift: &DriftMatrix, diffusion: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let report = is_stable(drift)?;
    if !report.stable {
        return Err(GaussianError::NotStable {
            abscissa: report.spectral_abscissa,
        });
    }
    solve_lyapunov_formal(drift, diffusion)
}

/// Unique solution of the Lyapunov equation without the stability
/// precondition. It exists whenever no two eigenvalues of the drift sum to
/// zero, but is only a stationary state when the drift is Hurwitz.
pub fn solve_lyapunov_formal(
    drift: &DriftMatrix,
    diffusion: &DiffusionMatrix,
) -> Result<CovarianceMatrix> {
    let a = drift.as_matrix();
    let d = diffusion.as_matrix();
    let n = a.nrows();
    if d.nrows() != n {
        return Err(GaussianError::DimensionMismatch(n, d.nrows()));
    }
    let scale = a.amax();
    if scale == 0.0 {
        return Err(GaussianError::SingularSystem);
    }
    let a = a / scale;
    let d = d / scale;

    let id = DMatrix::<f64>::identity(n, n);
    let k = id.kronecker(&a) + a.kronecker(&id);
    let rhs = -DVector::from_column_slice(d.as_slice());

    let lu = k.clone().lu();
    let u = lu.u();
    let pivots = u.diagonal().map(f64::abs);
    if pivots.min() <= PIVOT_TOL * pivots.max() {
        return Err(GaussianError::SingularSystem);
    }
    let mut x = lu.solve(&rhs).ok_or(GaussianError::SingularSystem)?;
    // one step of iterative refinement
    let r = &rhs - &k * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(GaussianError::SingularSystem);
    }

    let v = DMatrix::from_column_slice(n, n, x.as_slice());
    let v = (&v + v.transpose()) * 0.5;
    CovarianceMatrix::new(v)
}

/// `‖A V + V Aᵀ + D‖_F / max(1, ‖D‖_F)`.
pub fn lyapunov_residual(drift: &DriftMatrix, cov: &CovarianceMatrix, diffusion: &DiffusionMatrix) -> f64 {
    let a = drift.as_matrix();
    let v = cov.as_matrix();
    let d = diffusion.as_matrix();
    let r = a * v + v * a.transpose() + d;
    r.norm() / d.norm().max(1.0)
}
