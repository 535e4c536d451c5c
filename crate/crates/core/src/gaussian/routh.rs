//! Exact Routh–Hurwitz test.
//!
//! The drift matrix is rescaled by a power of two (exact in binary floating
//! point), each entry is converted to the exact dyadic rational it encodes,
//! and the characteristic polynomial and Routh table are built in arbitrary
//! precision. The classification is therefore exact for the matrix as
//! stored, and independent of any eigensolver.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{DriftMatrix, GaussianError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouthReport {
    pub stable: bool,
    /// Sign changes in the first column; equals the number of roots in the
    /// open right half-plane when the table is regular.
    pub sign_changes: usize,
    /// A zero appeared in the first column (root on or symmetric about the
    /// imaginary axis). Such tables are never Hurwitz.
    pub degenerate: bool,
}

fn to_rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(GaussianError::NonFinite)
}

/// Coefficients of `det(sI - A)`, highest degree first (leading 1), by the
/// Faddeev–LeVerrier recurrence over the rationals.
pub fn characteristic_polynomial(m: &DMatrix<f64>) -> Result<Vec<BigRational>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(GaussianError::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| to_rational(m[(i, j)])).collect())
        .collect::<Result<_>>()?;

    let mut coeffs = vec![BigRational::from_integer(BigInt::from(1))];
    // M_0 = 0; M_k = A M_{k-1} + c_{k-1} I; c_k = -tr(A M_k) / k
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let prev_c = coeffs[k - 1].clone();
        let mut next = matmul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &prev_c;
        }
        mk = next;
        let am = matmul(&a, &mk);
        let trace: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs.push(-trace / BigRational::from_integer(BigInt::from(k)));
    }
    Ok(coeffs)
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Routh table on polynomial coefficients (highest degree first).
pub fn routh_table(coeffs: &[BigRational]) -> RouthReport {
    let coeffs: Vec<BigRational> = coeffs
        .iter()
        .skip_while(|c| c.is_zero())
        .cloned()
        .collect();
    let degree = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() {
        return RouthReport {
            stable: false,
            sign_changes: 0,
            degenerate: true,
        };
    }
    let sign = if coeffs[0].is_negative() { -1 } else { 1 };
    let norm: Vec<BigRational> = coeffs
        .iter()
        .map(|c| if sign < 0 { -c.clone() } else { c.clone() })
        .collect();

    let width = degree / 2 + 1;
    let row = |start: usize| -> Vec<BigRational> {
        (0..width)
            .map(|k| norm.get(start + 2 * k).cloned().unwrap_or_else(BigRational::zero))
            .collect()
    };
    let mut upper = row(0);
    let mut lower = row(1);
    let mut first_column = vec![upper[0].clone()];
    let mut degenerate = false;

    for _ in 1..=degree {
        let pivot = lower[0].clone();
        first_column.push(pivot.clone());
        if pivot.is_zero() {
            degenerate = true;
            break;
        }
        let next: Vec<BigRational> = (0..width)
            .map(|k| {
                let u = upper.get(k + 1).cloned().unwrap_or_else(BigRational::zero);
                let l = lower.get(k + 1).cloned().unwrap_or_else(BigRational::zero);
                (&pivot * &u - &upper[0] * &l) / &pivot
            })
            .collect();
        upper = lower;
        lower = next;
    }

    let sign_changes = first_column
        .windows(2)
        .filter(|w| w[0].is_positive() != w[1].is_positive())
        .count();
    let stable = !degenerate && first_column.iter().all(|c| c.is_positive());
    RouthReport {
        stable,
        sign_changes,
        degenerate,
    }
}

/// Routh–Hurwitz classification of a drift matrix.
pub fn routh_hurwitz(drift: &DriftMatrix) -> Result<RouthReport> {
    let m = drift.as_matrix();
    let amax = m.amax();
    let scaled = if amax > 0.0 {
        // power-of-two rescaling keeps every entry exact
        let exp = amax.log2().floor() as i32;
        m * 2f64.powi(-exp)
    } else {
        m.clone()
    };
    let poly = characteristic_polynomial(&scaled)?;
    Ok(routh_table(&poly))
}
