//! Python bindings: configs, single points, sweeps, presets and the Gaussian
//! primitives. Matrices cross the boundary as lists of rows.

use std::path::PathBuf;

use nalgebra::{DMatrix, Matrix4};
use omm_core::gaussian::{self, CovarianceMatrix, DiffusionMatrix, DriftMatrix};
use omm_core::measures::{self, parse_pairs, MeasureReport, ModePair, ReducedCovariance, DEFAULT_PAIRS};
use omm_core::model::{self, DriftConvention};
use omm_core::sweep::{
    self, Axis, Config, CsvOptions, Scale, StabilityPolicy, SweepError, SweepRow, SweepSpec,
    Workflow,
};
use omm_core::validity::ValidityReport;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(omm, NotStableError, PyRuntimeError, "The drift matrix is not Hurwitz.");

fn sweep_err(e: SweepError) -> PyErr {
    match e {
        SweepError::NotStable { abscissa } => NotStableError::new_err(format!(
            "system is not stable (spectral abscissa {abscissa:e} rad/s)"
        )),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Vec<Vec<f64>>) -> PyResult<DMatrix<f64>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("expected a square matrix (list of rows)"));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn pairs_arg(pairs: Option<&str>) -> PyResult<Vec<ModePair>> {
    match pairs {
        Some(s) => parse_pairs(s).map_err(value_err),
        None => Ok(DEFAULT_PAIRS.to_vec()),
    }
}

fn reduced(cov: Vec<Vec<f64>>) -> PyResult<ReducedCovariance> {
    let m = to_matrix(cov)?;
    if m.nrows() != 4 {
        return Err(PyValueError::new_err("expected a 4x4 two-mode covariance matrix"));
    }
    let pair = DEFAULT_PAIRS[2];
    Ok(ReducedCovariance::new(pair, Matrix4::from_fn(|i, j| m[(i, j)])))
}

/// Run configuration: workflow, stability policy and parameter values in
/// config units (Hz for frequencies).
#[pyclass(name = "Config", module = "omm", from_py_object)]
#[derive(Clone)]
struct PyConfig {
    inner: Config,
}

#[pymethods]
impl PyConfig {
    #[new]
    fn new() -> Self {
        PyConfig {
            inner: Config::baseline(),
        }
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        Config::from_toml_str(text)
            .map(|inner| PyConfig { inner })
            .map_err(sweep_err)
    }

    #[staticmethod]
    fn from_path(path: PathBuf) -> PyResult<Self> {
        Config::from_path(&path)
            .map(|inner| PyConfig { inner })
            .map_err(sweep_err)
    }

    fn set(&mut self, key: &str, value: f64) -> PyResult<()> {
        self.inner.set(key, value).map_err(sweep_err)
    }

    fn get(&self, key: &str) -> PyResult<f64> {
        self.inner
            .get(key)
            .ok_or_else(|| PyValueError::new_err(format!("no value for `{key}`")))
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.workflow.name()
    }

    #[setter]
    fn set_mode(&mut self, mode: &str) -> PyResult<()> {
        self.inner.workflow = Workflow::parse(mode).ok_or_else(|| value_err(format!("unknown mode `{mode}`")))?;
        Ok(())
    }

    #[getter]
    fn stability(&self) -> &'static str {
        self.inner.stability.name()
    }

    #[setter]
    fn set_stability(&mut self, policy: &str) -> PyResult<()> {
        self.inner.stability =
            StabilityPolicy::parse(policy).ok_or_else(|| value_err(format!("unknown policy `{policy}`")))?;
        Ok(())
    }

    #[getter]
    fn drift_convention(&self) -> &'static str {
        self.inner.drift_convention.name()
    }

    #[setter]
    fn set_drift_convention(&mut self, name: &str) -> PyResult<()> {
        self.inner.drift_convention =
            DriftConvention::parse(name).ok_or_else(|| value_err(format!("unknown convention `{name}`")))?;
        Ok(())
    }

    fn effective_params(&self) -> PyResult<PyEffectiveParams> {
        self.inner
            .effective_params()
            .map(|inner| PyEffectiveParams { inner })
            .map_err(sweep_err)
    }

    fn __repr__(&self) -> String {
        format!("Config({})", self.inner.metadata().join(", "))
    }
}

/// Effective (linearised) parameters in rad/s.
#[pyclass(name = "EffectiveParams", module = "omm", from_py_object)]
#[derive(Clone)]
struct PyEffectiveParams {
    inner: model::EffectiveParams,
}

#[pymethods]
impl PyEffectiveParams {
    #[staticmethod]
    fn baseline() -> Self {
        PyEffectiveParams {
            inner: model::EffectiveParams::baseline(),
        }
    }

    #[getter]
    fn delta_c(&self) -> f64 {
        self.inner.delta_c
    }

    #[getter]
    fn delta_m(&self) -> [f64; 2] {
        self.inner.delta_m
    }

    #[getter]
    fn om_coupling(&self) -> f64 {
        self.inner.om_coupling
    }

    #[getter]
    fn mm_coupling(&self) -> [f64; 2] {
        self.inner.mm_coupling
    }

    #[getter]
    fn occupations(&self) -> (f64, [f64; 2], [f64; 2]) {
        (self.inner.n_c, self.inner.n_m, self.inner.n_b)
    }

    fn exchanged(&self) -> Self {
        PyEffectiveParams {
            inner: self.inner.exchanged(),
        }
    }

    #[pyo3(signature = (convention = "appendix"))]
    fn drift(&self, convention: &str) -> PyResult<Vec<Vec<f64>>> {
        let c = DriftConvention::parse(convention)
            .ok_or_else(|| value_err(format!("unknown convention `{convention}`")))?;
        let a = model::build_drift(&self.inner, c).map_err(value_err)?;
        Ok(to_rows(a.as_matrix()))
    }

    fn diffusion(&self) -> PyResult<Vec<Vec<f64>>> {
        let d = model::build_diffusion(&self.inner).map_err(value_err)?;
        Ok(to_rows(d.as_matrix()))
    }
}

/// Entanglement and steering of one mode pair.
#[pyclass(name = "MeasureReport", module = "omm", get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyMeasureReport {
    pair: String,
    log_negativity: f64,
    steering_a_to_b: f64,
    steering_b_to_a: f64,
    steering_asymmetry: f64,
    physical: bool,
}

impl From<&MeasureReport> for PyMeasureReport {
    fn from(m: &MeasureReport) -> Self {
        PyMeasureReport {
            pair: m.pair.to_string(),
            log_negativity: m.log_negativity,
            steering_a_to_b: m.steering.a_to_b,
            steering_b_to_a: m.steering.b_to_a,
            steering_asymmetry: m.steering.asymmetry,
            physical: m.physical,
        }
    }
}

#[pymethods]
impl PyMeasureReport {
    fn __repr__(&self) -> String {
        format!(
            "MeasureReport({}, E_N={:.6}, S_ab={:.6}, S_ba={:.6})",
            self.pair, self.log_negativity, self.steering_a_to_b, self.steering_b_to_a
        )
    }
}

fn validity_dict<'py>(py: Python<'py>, v: &ValidityReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("margin", v.margin)?;
    d.set_item("kerr_coefficient", v.kerr_coefficient)?;
    d.set_item("magnon_number_ratio", v.magnon_number.map(|c| c.ratio))?;
    d.set_item("magnon_number_pass", v.magnon_number.map(|c| c.pass))?;
    d.set_item("kerr_critical", v.kerr.map(|c| c.critical))?;
    d.set_item("kerr_pass", v.kerr.map(|c| c.pass))?;
    d.set_item("passed", v.passed())?;
    Ok(d)
}

/// Outcome of a single point.
#[pyclass(name = "PointResult", module = "omm", skip_from_py_object)]
struct PyPointResult {
    inner: sweep::PointResult,
}

#[pymethods]
impl PyPointResult {
    #[getter]
    fn stable(&self) -> bool {
        self.inner.stable
    }

    #[getter]
    fn spectral_abscissa(&self) -> f64 {
        self.inner.spectral_abscissa
    }

    #[getter]
    fn physical(&self) -> bool {
        self.inner.physical
    }

    #[getter]
    fn lyapunov_residual(&self) -> f64 {
        self.inner.lyapunov_residual
    }

    #[getter]
    fn min_symplectic_eigenvalue(&self) -> f64 {
        self.inner.min_symplectic_eigenvalue
    }

    #[getter]
    fn covariance(&self) -> Vec<Vec<f64>> {
        to_rows(self.inner.covariance.as_matrix())
    }

    #[getter]
    fn measures(&self) -> Vec<PyMeasureReport> {
        self.inner.measures.iter().map(PyMeasureReport::from).collect()
    }

    #[getter]
    fn effective(&self) -> PyEffectiveParams {
        PyEffectiveParams {
            inner: self.inner.effective.clone(),
        }
    }

    #[getter]
    fn validity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        validity_dict(py, &self.inner.validity)
    }
}

/// One grid point of a sweep; measures are NaN where undefined.
#[pyclass(name = "SweepRow", module = "omm", get_all, skip_from_py_object)]
struct PySweepRow {
    coords: Vec<f64>,
    stable: Option<bool>,
    spectral_abscissa: f64,
    physical: bool,
    measures: Vec<PyMeasureReport>,
    error: Option<String>,
}

impl From<&SweepRow> for PySweepRow {
    fn from(r: &SweepRow) -> Self {
        PySweepRow {
            coords: r.coords.clone(),
            stable: r.stable,
            spectral_abscissa: r.spectral_abscissa,
            physical: r.physical,
            measures: r.measures.iter().map(PyMeasureReport::from).collect(),
            error: r.error.clone(),
        }
    }
}

#[pyfunction]
#[pyo3(signature = (config = None, pairs = None))]
fn run_point(py: Python<'_>, config: Option<PyConfig>, pairs: Option<&str>) -> PyResult<PyPointResult> {
    let config = config.map_or_else(Config::baseline, |c| c.inner);
    let pairs = pairs_arg(pairs)?;
    py.detach(|| sweep::run_point(&config, &pairs))
        .map(|inner| PyPointResult { inner })
        .map_err(sweep_err)
}

fn spec(
    config: Option<PyConfig>,
    param: &str,
    start: f64,
    stop: f64,
    points: usize,
    log: bool,
    pairs: Option<&str>,
) -> PyResult<SweepSpec> {
    let scale = if log { Scale::Log } else { Scale::Linear };
    Ok(SweepSpec {
        config: config.map_or_else(Config::baseline, |c| c.inner),
        axes: vec![Axis::new(param, start, stop, points, scale).map_err(sweep_err)?],
        pairs: pairs_arg(pairs)?,
    })
}

#[pyfunction]
#[pyo3(signature = (param, start, stop, points, config = None, log = false, pairs = None, threads = None))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    py: Python<'_>,
    param: &str,
    start: f64,
    stop: f64,
    points: usize,
    config: Option<PyConfig>,
    log: bool,
    pairs: Option<&str>,
    threads: Option<usize>,
) -> PyResult<Vec<PySweepRow>> {
    let spec = spec(config, param, start, stop, points, log, pairs)?;
    let rows = py.detach(|| sweep::run_sweep(&spec, threads)).map_err(sweep_err)?;
    Ok(rows.iter().map(PySweepRow::from).collect())
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    sweep::PRESET_IDS.to_vec()
}

/// Runs a figure preset; writes CSV to `path` when given.
#[pyfunction]
#[pyo3(signature = (id, path = None, timestamp = false, threads = None))]
fn figure(
    py: Python<'_>,
    id: &str,
    path: Option<PathBuf>,
    timestamp: bool,
    threads: Option<usize>,
) -> PyResult<Vec<PySweepRow>> {
    let fp = sweep::preset(id).map_err(sweep_err)?;
    let spec = fp.spec().map_err(sweep_err)?;
    let rows = py.detach(|| sweep::run_sweep(&spec, threads)).map_err(sweep_err)?;
    if let Some(path) = path {
        let file = std::fs::File::create(&path).map_err(value_err)?;
        let opts = CsvOptions {
            timestamp,
            extra: vec![format!("preset = {id}"), format!("description = {}", fp.description)],
        };
        sweep::write_sweep(std::io::BufWriter::new(file), &spec, &rows, &opts).map_err(sweep_err)?;
    }
    Ok(rows.iter().map(PySweepRow::from).collect())
}

#[pyfunction]
fn is_stable(drift: Vec<Vec<f64>>) -> PyResult<(bool, f64)> {
    let a = DriftMatrix::new(to_matrix(drift)?).map_err(value_err)?;
    let r = gaussian::is_stable(&a).map_err(value_err)?;
    Ok((r.stable, r.spectral_abscissa))
}

/// Solves `A V + V Aᵀ + D = 0`; `formal` skips the Hurwitz precondition.
#[pyfunction]
#[pyo3(signature = (drift, diffusion, formal = false))]
fn solve_lyapunov(drift: Vec<Vec<f64>>, diffusion: Vec<Vec<f64>>, formal: bool) -> PyResult<Vec<Vec<f64>>> {
    let a = DriftMatrix::new(to_matrix(drift)?).map_err(value_err)?;
    let d = DiffusionMatrix::new(to_matrix(diffusion)?).map_err(value_err)?;
    let v = if formal {
        gaussian::solve_lyapunov_formal(&a, &d)
    } else {
        gaussian::solve_lyapunov(&a, &d)
    }
    .map_err(value_err)?;
    Ok(to_rows(v.as_matrix()))
}

#[pyfunction]
fn min_symplectic_eigenvalue(cov: Vec<Vec<f64>>) -> PyResult<f64> {
    let v = CovarianceMatrix::new(to_matrix(cov)?).map_err(value_err)?;
    v.min_symplectic_eigenvalue().map_err(value_err)
}

/// Logarithmic negativity of a 4x4 two-mode covariance matrix.
#[pyfunction]
fn log_negativity(cov: Vec<Vec<f64>>) -> PyResult<f64> {
    measures::log_negativity(&reduced(cov)?).map_err(value_err)
}

/// Gaussian steering `(S_A→B, S_B→A)` of a 4x4 two-mode covariance matrix.
#[pyfunction]
fn gaussian_steering(cov: Vec<Vec<f64>>) -> PyResult<(f64, f64)> {
    let s = measures::gaussian_steering(&reduced(cov)?).map_err(value_err)?;
    Ok((s.a_to_b, s.b_to_a))
}

#[pymodule]
fn omm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NotStableError", m.py().get_type::<NotStableError>())?;
    m.add_class::<PyConfig>()?;
    m.add_class::<PyEffectiveParams>()?;
    m.add_class::<PyMeasureReport>()?;
    m.add_class::<PyPointResult>()?;
    m.add_class::<PySweepRow>()?;
    m.add_function(wrap_pyfunction!(run_point, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(figure, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(is_stable, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lyapunov, m)?)?;
    m.add_function(wrap_pyfunction!(min_symplectic_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(log_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_steering, m)?)?;
    Ok(())
}
