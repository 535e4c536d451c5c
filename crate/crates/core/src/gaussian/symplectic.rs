use nalgebra::DMatrix;

use super::{check_square, check_symmetric, eigenvalues, symplectic_form, GaussianError, Result};

/// Relative tolerance when pairing the `±iν` eigenvalues of `Ω V`.
const PAIR_TOL: f64 = 1e-9;

/// Symplectic eigenvalues of a `2n x 2n` covariance matrix, ascending.
///
/// These are the moduli of the eigenvalues of `iΩV`, which come in `±ν`
/// pairs; each pair contributes one value.
pub fn symplectic_eigenvalues(cm: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_square(cm)?;
    let dim = cm.nrows();
    if !dim.is_multiple_of(2) {
        return Err(GaussianError::OddDimension(dim));
    }
    check_symmetric(cm)?;
    let omega = symplectic_form(dim / 2);
    let mut moduli: Vec<f64> = eigenvalues(&(omega * cm))?
        .iter()
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(f64::total_cmp);

    moduli
        .chunks_exact(2)
        .map(|pair| {
            let (lo, hi) = (pair[0], pair[1]);
            if hi - lo > PAIR_TOL * hi.max(f64::MIN_POSITIVE) {
                Err(GaussianError::NumericalFailure("unpaired symplectic spectrum"))
            } else {
                Ok(0.5 * (lo + hi))
            }
        })
        .collect()
}

pub fn min_symplectic_eigenvalue(cm: &DMatrix<f64>) -> Result<f64> {
    Ok(symplectic_eigenvalues(cm)?[0])
}

/// Partial transposition of a two-mode covariance matrix: momentum of the
/// second mode flipped, `P V P` with `P = diag(1, 1, 1, -1)`.
pub fn partial_transpose(cm: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if cm.nrows() != 4 || cm.ncols() != 4 {
        return Err(GaussianError::WrongShape {
            expected: 4,
            rows: cm.nrows(),
            cols: cm.ncols(),
        });
    }
    check_symmetric(cm)?;
    let mut out = cm.clone();
    for k in 0..4 {
        if k != 3 {
            out[(3, k)] = -out[(3, k)];
            out[(k, 3)] = -out[(k, 3)];
        }
    }
    Ok(out)
}
