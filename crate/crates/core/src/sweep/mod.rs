//! Single points, 1D/2D parameter sweeps, stability maps and the figure
//! presets, plus their CSV form.

mod config;
mod csv_out;
mod engine;
mod presets;

use thiserror::Error;

use crate::gaussian::GaussianError;
use crate::measures::MeasureError;
use crate::model::ModelError;

pub use config::{Config, StabilityPolicy, Workflow};
pub use csv_out::{
    point_header, sweep_header, write_point, write_stability_map, write_sweep, CsvOptions,
};
pub use engine::{
    run_point, run_sweep, stability_map, Axis, PointResult, Scale, StabilityRow, SweepRow,
    SweepSpec,
};
pub use presets::{preset, FigurePreset, PRESET_IDS};

pub type Result<T> = std::result::Result<T, SweepError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("config error: {0}")]
    Config(String),
    #[error("unknown parameter key `{0}`")]
    UnknownKey(String),
    #[error("invalid sweep axis: {0}")]
    InvalidAxis(String),
    #[error("unknown figure preset `{0}`")]
    UnknownPreset(String),
    #[error("system is not stable (spectral abscissa {:e} Hz)", abscissa / (2.0 * std::f64::consts::PI))]
    NotStable {
        /// Largest real part of the drift spectrum (rad/s).
        abscissa: f64,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl From<std::io::Error> for SweepError {
    fn from(e: std::io::Error) -> Self {
        SweepError::Io {
            path: "<output>".into(),
            message: e.to_string(),
        }
    }
}
