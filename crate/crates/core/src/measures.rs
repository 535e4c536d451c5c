//! Bipartite Gaussian measures: logarithmic negativity, Gaussian steering in
//! both directions and the steering asymmetry.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use thiserror::Error;

use crate::gaussian::{
    min_symplectic_eigenvalue, partial_transpose, CovarianceMatrix, GaussianError, Mode,
};

/// Vacuum symplectic eigenvalue.
const VACUUM: f64 = 0.5;
/// Slack below the vacuum value still accepted as physical.
pub const PHYSICALITY_TOL: f64 = 1e-9;
/// Negative radicands smaller than this are rounding noise near pure states.
const RADICAND_TOL: f64 = 1e-12;
/// Reported measures below this are set to exactly zero.
const ZERO_CLAMP: f64 = 1e-12;

pub type Result<T> = std::result::Result<T, MeasureError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("a pair needs two distinct modes, got {0:?} twice")]
    SameMode(Mode),
    #[error("cannot parse mode pair `{0}` (expected e.g. `c-m1`)")]
    BadPair(String),
    #[error("reduced state is unphysical (min symplectic eigenvalue {0})")]
    NonPhysicalInput(f64),
    #[error("symplectic invariant is complex (radicand {0:e})")]
    ComplexEta(f64),
    #[error("reduced covariance determinant {0:e} is not positive")]
    NonPositiveDeterminant(f64),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

/// An ordered pair of distinct modes, written `a-b` (e.g. `c-m1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModePair {
    a: Mode,
    b: Mode,
}

impl ModePair {
    pub fn new(a: Mode, b: Mode) -> Result<Self> {
        if a == b {
            return Err(MeasureError::SameMode(a));
        }
        Ok(ModePair { a, b })
    }

    pub fn a(self) -> Mode {
        self.a
    }

    pub fn b(self) -> Mode {
        self.b
    }

    pub fn swapped(self) -> Self {
        ModePair { a: self.b, b: self.a }
    }

    /// The pair with subsystems 1 and 2 exchanged in both members.
    pub fn exchanged(self) -> Self {
        ModePair {
            a: self.a.exchanged(),
            b: self.b.exchanged(),
        }
    }

    /// Column-name form, `c_m1`.
    pub fn key(self) -> String {
        format!("{}_{}", self.a.label(), self.b.label())
    }
}

impl fmt::Display for ModePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a.label(), self.b.label())
    }
}

impl FromStr for ModePair {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || MeasureError::BadPair(s.to_string());
        let (a, b) = s.trim().split_once(['-', '_']).ok_or_else(bad)?;
        let a = Mode::from_label(a.trim()).ok_or_else(bad)?;
        let b = Mode::from_label(b.trim()).ok_or_else(bad)?;
        ModePair::new(a, b)
    }
}

/// The three pairs analysed for the ring: `c-m1`, `c-m2`, `m1-m2`.
pub const DEFAULT_PAIRS: [ModePair; 3] = [
    ModePair { a: Mode::Cavity, b: Mode::Magnon1 },
    ModePair { a: Mode::Cavity, b: Mode::Magnon2 },
    ModePair { a: Mode::Magnon1, b: Mode::Magnon2 },
];

/// All ten unordered pairs, in layout order.
pub fn all_pairs() -> Vec<ModePair> {
    let mut out = Vec::with_capacity(10);
    for (i, &a) in Mode::ALL.iter().enumerate() {
        for &b in &Mode::ALL[i + 1..] {
            out.push(ModePair { a, b });
        }
    }
    out
}

/// Parses a comma-separated list such as `c-m1,c-m2,m1-m2`; `all` selects
/// every pair.
pub fn parse_pairs(s: &str) -> Result<Vec<ModePair>> {
    if s.trim() == "all" {
        return Ok(all_pairs());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Two-mode covariance `[[A, C], [Cᵀ, B]]` with `A` belonging to mode A.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCovariance {
    pub pair: ModePair,
    pub matrix: Matrix4<f64>,
}

impl ReducedCovariance {
    pub fn new(pair: ModePair, matrix: Matrix4<f64>) -> Self {
        ReducedCovariance { pair, matrix }
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.matrix.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.matrix.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn block_c(&self) -> Matrix2<f64> {
        self.matrix.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Same state with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        let p = Matrix4::new(
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0,
        );
        ReducedCovariance {
            pair: self.pair.swapped(),
            matrix: p * self.matrix * p,
        }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_iterator(4, 4, self.matrix.iter().copied())
    }

    pub fn min_symplectic_eigenvalue(&self) -> Result<f64> {
        Ok(min_symplectic_eigenvalue(&self.to_dmatrix())?)
    }

    pub fn is_physical(&self) -> Result<bool> {
        Ok(self.min_symplectic_eigenvalue()? >= VACUUM - PHYSICALITY_TOL)
    }

    fn require_physical(&self) -> Result<()> {
        let nu = self.min_symplectic_eigenvalue()?;
        if nu < VACUUM - PHYSICALITY_TOL {
            return Err(MeasureError::NonPhysicalInput(nu));
        }
        Ok(())
    }
}

/// Extracts the rows and columns of two modes from a full covariance matrix.
pub fn reduce(v: &CovarianceMatrix, pair: ModePair) -> Result<ReducedCovariance> {
    let m = v.as_matrix();
    let (oa, ob) = (pair.a.offset(), pair.b.offset());
    let needed = oa.max(ob) + 2;
    if m.nrows() < needed {
        return Err(GaussianError::DimensionMismatch(m.nrows(), needed).into());
    }
    let idx = [oa, oa + 1, ob, ob + 1];
    let matrix = Matrix4::from_fn(|i, j| m[(idx[i], idx[j])]);
    Ok(ReducedCovariance { pair, matrix })
}

fn clamp(x: f64) -> f64 {
    if x < ZERO_CLAMP {
        0.0
    } else {
        x
    }
}

/// Smallest symplectic eigenvalue of the partially transposed state, from
/// the invariants `χ = det A + det B - 2 det C` and `det V_R`.
pub fn partial_transpose_eta(r: &ReducedCovariance) -> Result<f64> {
    let chi = r.block_a().determinant() + r.block_b().determinant()
        - 2.0 * r.block_c().determinant();
    let det = r.matrix.determinant();
    let mut radicand = chi * chi - 4.0 * det;
    if radicand < 0.0 {
        if radicand < -RADICAND_TOL * chi.abs().max(1.0).powi(2) {
            return Err(MeasureError::ComplexEta(radicand));
        }
        radicand = 0.0;
    }
    let inner = chi - radicand.sqrt();
    if inner < 0.0 {
        return Err(MeasureError::ComplexEta(inner));
    }
    Ok((inner / 2.0).sqrt())
}

/// `E_N = max(0, -ln 2η)` for a physical reduced state.
pub fn log_negativity(r: &ReducedCovariance) -> Result<f64> {
    r.require_physical()?;
    log_negativity_unchecked(r)
}

/// Logarithmic negativity without the physicality precondition.
pub fn log_negativity_unchecked(r: &ReducedCovariance) -> Result<f64> {
    let eta = partial_transpose_eta(r)?;
    Ok(clamp(-(2.0 * eta).ln()))
}

/// Logarithmic negativity from the symplectic spectrum of the explicit
/// partial transpose. Independent route to [`log_negativity`].
pub fn log_negativity_via_partial_transpose(r: &ReducedCovariance) -> Result<f64> {
    let pt = partial_transpose(&r.to_dmatrix())?;
    let nu = min_symplectic_eigenvalue(&pt)?;
    Ok(clamp(-(2.0 * nu).ln()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Steering {
    pub a_to_b: f64,
    pub b_to_a: f64,
    /// `|S_{A→B} - S_{B→A}|`.
    pub asymmetry: f64,
}

/// Gaussian steering `S_{A→B} = max(0, ½ ln(det A / 4 det V_R))` and its
/// reverse, for a physical reduced state.
pub fn gaussian_steering(r: &ReducedCovariance) -> Result<Steering> {
    r.require_physical()?;
    gaussian_steering_unchecked(r)
}

/// Gaussian steering without the physicality precondition.
pub fn gaussian_steering_unchecked(r: &ReducedCovariance) -> Result<Steering> {
    let det = r.matrix.determinant();
    if det <= 0.0 {
        return Err(MeasureError::NonPositiveDeterminant(det));
    }
    let one_way = |block: Matrix2<f64>| -> Result<f64> {
        let d = block.determinant();
        if d <= 0.0 {
            return Err(MeasureError::NonPositiveDeterminant(d));
        }
        Ok(clamp(0.5 * (d / (4.0 * det)).ln()))
    };
    let a_to_b = one_way(r.block_a())?;
    let b_to_a = one_way(r.block_b())?;
    Ok(Steering {
        a_to_b,
        b_to_a,
        asymmetry: (a_to_b - b_to_a).abs(),
    })
}

/// All measures for one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub pair: ModePair,
    pub log_negativity: f64,
    pub steering: Steering,
    /// Whether the reduced state passed the physicality check.
    pub physical: bool,
}

impl MeasureReport {
    /// Report for a pair whose measures could not be evaluated.
    pub fn undefined(pair: ModePair) -> Self {
        MeasureReport {
            pair,
            log_negativity: f64::NAN,
            steering: Steering {
                a_to_b: f64::NAN,
                b_to_a: f64::NAN,
                asymmetry: f64::NAN,
            },
            physical: false,
        }
    }
}

/// Evaluates one pair. With `strict`, an unphysical reduced state is an
/// error; otherwise the formulas are applied as-is and `physical` records
/// the outcome of the check.
pub fn pair_report(v: &CovarianceMatrix, pair: ModePair, strict: bool) -> Result<MeasureReport> {
    let r = reduce(v, pair)?;
    let physical = r.is_physical()?;
    if strict && !physical {
        return Err(MeasureError::NonPhysicalInput(r.min_symplectic_eigenvalue()?));
    }
    Ok(MeasureReport {
        pair,
        log_negativity: log_negativity_unchecked(&r)?,
        steering: gaussian_steering_unchecked(&r)?,
        physical,
    })
}

/// Reports for each requested pair, in order.
pub fn all_pairs_report(
    v: &CovarianceMatrix,
    pairs: &[ModePair],
    strict: bool,
) -> Result<Vec<MeasureReport>> {
    pairs.iter().map(|&p| pair_report(v, p, strict)).collect()
}
