use rayon::prelude::*;

use crate::gaussian::{
    is_stable, lyapunov_residual, solve_lyapunov_formal, CovarianceMatrix, DriftMatrix,
};
use crate::measures::{pair_report, MeasureReport, ModePair, PHYSICALITY_TOL};
use crate::model::{
    build_diffusion, build_drift, derive_drive_amplitudes, derive_effective_couplings,
    magnon_amplitudes_from_couplings, solve_steady_state, CouplingDiagnostics, EffectiveParams,
    SteadyState,
};
use crate::validity::ValidityReport;

use super::{Config, Result, StabilityPolicy, SweepError, Workflow};

/// Everything computed at one parameter point.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub effective: EffectiveParams,
    pub stable: bool,
    /// Largest real part of the drift spectrum (rad/s).
    pub spectral_abscissa: f64,
    pub covariance: CovarianceMatrix,
    pub lyapunov_residual: f64,
    /// Smallest symplectic eigenvalue of the full covariance; NaN when the
    /// spectrum does not pair up (formal solutions far from physical).
    pub min_symplectic_eigenvalue: f64,
    /// Whether the full covariance satisfies the uncertainty principle.
    pub physical: bool,
    pub measures: Vec<MeasureReport>,
    pub validity: ValidityReport,
    pub steady_state: Option<SteadyState>,
    pub diagnostics: Option<CouplingDiagnostics>,
}

struct Prepared {
    effective: EffectiveParams,
    validity: ValidityReport,
    steady_state: Option<SteadyState>,
    diagnostics: Option<CouplingDiagnostics>,
}

fn prepare(config: &Config) -> Result<Prepared> {
    let kerr = config.kerr_coefficient();
    let margin = config.validity_margin;
    match config.workflow {
        Workflow::Effective => {
            let effective = config.effective_params()?;
            let (amplitude, rabi) =
                magnon_amplitudes_from_couplings(&effective, config.bare_mm_coupling());
            let validity =
                ValidityReport::from_amplitudes(amplitude, rabi, config.spins(), kerr, margin);
            Ok(Prepared {
                effective,
                validity,
                steady_state: None,
                diagnostics: None,
            })
        }
        Workflow::Physical => {
            let p = config.physical_params()?;
            let drives = derive_drive_amplitudes(&p)?;
            let s = solve_steady_state(&p, config.steady_state)?;
            let (effective, diagnostics) = derive_effective_couplings(&p, &s)?;
            let validity =
                ValidityReport::from_steady_state(&s, drives.rabi, drives.spins, kerr, margin);
            Ok(Prepared {
                effective,
                validity,
                steady_state: Some(s),
                diagnostics: Some(diagnostics),
            })
        }
    }
}

fn drift_for(config: &Config, e: &EffectiveParams) -> Result<DriftMatrix> {
    Ok(build_drift(e, config.drift_convention)?)
}

/// Builds the drift and diffusion, checks stability, solves the Lyapunov
/// equation and evaluates the measures for `pairs`.
///
/// Under [`StabilityPolicy::Require`] an unstable drift is an error and
/// unphysical reduced states are rejected. Under
/// [`StabilityPolicy::Formal`] both are reported through the `stable` and
/// `physical` flags instead; pairs whose formulas break down get NaN.
pub fn run_point(config: &Config, pairs: &[ModePair]) -> Result<PointResult> {
    let prepared = prepare(config)?;
    let drift = drift_for(config, &prepared.effective)?;
    let diffusion = build_diffusion(&prepared.effective)?;
    let report = is_stable(&drift)?;
    let strict = config.stability == StabilityPolicy::Require;
    if strict && !report.stable {
        return Err(SweepError::NotStable {
            abscissa: report.spectral_abscissa,
        });
    }
    let covariance = solve_lyapunov_formal(&drift, &diffusion)?;
    let residual = lyapunov_residual(&drift, &covariance, &diffusion);
    let nu = covariance.min_symplectic_eigenvalue().unwrap_or(f64::NAN);
    let physical = nu >= 0.5 - PHYSICALITY_TOL;

    let measures = if strict {
        pairs
            .iter()
            .map(|&p| pair_report(&covariance, p, true))
            .collect::<std::result::Result<Vec<_>, _>>()?
    } else {
        pairs
            .iter()
            .map(|&p| {
                pair_report(&covariance, p, false).unwrap_or_else(|_| MeasureReport::undefined(p))
            })
            .collect()
    };

    Ok(PointResult {
        effective: prepared.effective,
        stable: report.stable,
        spectral_abscissa: report.spectral_abscissa,
        covariance,
        lyapunov_residual: residual,
        min_symplectic_eigenvalue: nu,
        physical,
        measures,
        validity: prepared.validity,
        steady_state: prepared.steady_state,
        diagnostics: prepared.diagnostics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// One swept parameter, in config units.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn new(key: &str, start: f64, stop: f64, points: usize, scale: Scale) -> Result<Self> {
        let axis = Axis {
            key: key.to_string(),
            start,
            stop,
            points,
            scale,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn linear(key: &str, start: f64, stop: f64, points: usize) -> Result<Self> {
        Self::new(key, start, stop, points, Scale::Linear)
    }

    pub fn log(key: &str, start: f64, stop: f64, points: usize) -> Result<Self> {
        Self::new(key, start, stop, points, Scale::Log)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SweepError::InvalidAxis(m));
        if !Config::is_key(&self.key) {
            return Err(SweepError::UnknownKey(self.key.clone()));
        }
        if self.points < 2 {
            return bad(format!("`{}` needs at least 2 points", self.key));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start == self.stop {
            return bad(format!("`{}` needs distinct finite endpoints", self.key));
        }
        if self.scale == Scale::Log && (self.start <= 0.0 || self.stop <= 0.0) {
            return bad(format!("log axis `{}` needs positive endpoints", self.key));
        }
        Ok(())
    }

    /// Grid values; endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + t * (self.stop - self.start),
                    Scale::Log => {
                        let (a, b) = (self.start.ln(), self.stop.ln());
                        (a + t * (b - a)).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub config: Config,
    /// One or two axes; the first varies slowest.
    pub axes: Vec<Axis>,
    pub pairs: Vec<ModePair>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(SweepError::InvalidAxis(format!(
                "expected 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        for a in &self.axes {
            a.validate()?;
        }
        Ok(())
    }

    /// Grid coordinates in row order.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let mut grid: Vec<Vec<f64>> = vec![vec![]];
        for axis in &self.axes {
            let values = axis.values();
            grid = grid
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut c = prefix.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        grid
    }

    fn config_at(&self, coords: &[f64]) -> Result<Config> {
        let mut c = self.config.clone();
        for (axis, &v) in self.axes.iter().zip(coords) {
            c.set(&axis.key, v)?;
        }
        Ok(c)
    }
}

/// One grid point of a sweep. Points that could not be evaluated carry NaN
/// measures and the reason in `error`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    /// `None` when the point failed before stability was decided.
    pub stable: Option<bool>,
    pub spectral_abscissa: f64,
    pub physical: bool,
    pub lyapunov_residual: f64,
    pub min_symplectic_eigenvalue: f64,
    pub measures: Vec<MeasureReport>,
    pub error: Option<String>,
}

impl SweepRow {
    fn failed(coords: Vec<f64>, pairs: &[ModePair], stable: Option<bool>, abscissa: f64, error: String) -> Self {
        SweepRow {
            coords,
            stable,
            spectral_abscissa: abscissa,
            physical: false,
            lyapunov_residual: f64::NAN,
            min_symplectic_eigenvalue: f64::NAN,
            measures: pairs.iter().map(|&p| MeasureReport::undefined(p)).collect(),
            error: Some(error),
        }
    }

    pub fn measure(&self, pair: ModePair) -> Option<&MeasureReport> {
        self.measures.iter().find(|m| m.pair == pair)
    }
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SweepError::ThreadPool(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

fn evaluate_row(spec: &SweepSpec, coords: Vec<f64>) -> SweepRow {
    let config = match spec.config_at(&coords) {
        Ok(c) => c,
        Err(e) => return SweepRow::failed(coords, &spec.pairs, None, f64::NAN, e.to_string()),
    };
    match run_point(&config, &spec.pairs) {
        Ok(r) => SweepRow {
            coords,
            stable: Some(r.stable),
            spectral_abscissa: r.spectral_abscissa,
            physical: r.physical,
            lyapunov_residual: r.lyapunov_residual,
            min_symplectic_eigenvalue: r.min_symplectic_eigenvalue,
            measures: r.measures,
            error: None,
        },
        Err(SweepError::NotStable { abscissa }) => SweepRow::failed(
            coords,
            &spec.pairs,
            Some(false),
            abscissa,
            "not stable".into(),
        ),
        Err(e) => SweepRow::failed(coords, &spec.pairs, None, f64::NAN, e.to_string()),
    }
}

/// Evaluates every grid point, in parallel when `threads` allows. Row order
/// follows [`SweepSpec::grid`] regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec, threads: Option<usize>) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let grid = spec.grid();
    with_threads(threads, || {
        grid.into_par_iter()
            .map(|coords| evaluate_row(spec, coords))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRow {
    pub coords: Vec<f64>,
    /// Largest real part of the drift spectrum (rad/s); NaN on failure.
    pub spectral_abscissa: f64,
    pub stable: Option<bool>,
}

/// Spectral abscissa of the drift over the sweep grid.
pub fn stability_map(spec: &SweepSpec, threads: Option<usize>) -> Result<Vec<StabilityRow>> {
    spec.validate()?;
    let grid = spec.grid();
    let point = |coords: &[f64]| -> Result<(f64, bool)> {
        let config = spec.config_at(coords)?;
        let prepared = prepare(&config)?;
        let report = is_stable(&drift_for(&config, &prepared.effective)?)?;
        Ok((report.spectral_abscissa, report.stable))
    };
    with_threads(threads, || {
        grid.into_par_iter()
            .map(|coords| match point(&coords) {
                Ok((a, s)) => StabilityRow {
                    coords,
                    spectral_abscissa: a,
                    stable: Some(s),
                },
                Err(_) => StabilityRow {
                    coords,
                    spectral_abscissa: f64::NAN,
                    stable: None,
                },
            })
            .collect()
    })
}
