use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DriftMatrix, GaussianError, Result};

/// Eigenvalues with `|Re λ|` below this fraction of `max |A_ij|` count as
/// lying on the imaginary axis, and hence as unstable.
const MARGINAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub stable: bool,
    /// Largest real part over the spectrum (same units as the matrix).
    pub spectral_abscissa: f64,
    pub eigenvalues: Vec<Complex64>,
}

/// Spectrum of a general real matrix via the real Schur form.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let scale = m.amax();
    if scale == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); m.nrows()]);
    }
    let schur = Schur::try_new(m / scale, f64::EPSILON, 100_000)
        .ok_or(GaussianError::NumericalFailure("Schur iteration did not converge"))?;
    Ok(schur
        .complex_eigenvalues()
        .iter()
        .map(|z| z * scale)
        .collect())
}

/// Hurwitz test: every eigenvalue strictly in the open left half-plane.
pub fn is_stable(drift: &DriftMatrix) -> Result<StabilityReport> {
    let m = drift.as_matrix();
    let eigenvalues = eigenvalues(m)?;
    let spectral_abscissa = eigenvalues
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let stable = spectral_abscissa < -MARGINAL_TOL * m.amax();
    Ok(StabilityReport {
        stable,
        spectral_abscissa,
        eigenvalues,
    })
}
