//! Steady-state quantum correlations of a ring opto-magnomechanical system:
//! one optical cavity coupled by radiation pressure to two phonon modes,
//! each of which is dispersively coupled to a driven YIG magnon.
//!
//! The pipeline is
//! [`model`] (effective parameters → drift and diffusion) →
//! [`gaussian`] (Lyapunov steady state, stability, symplectic spectra) →
//! [`measures`] (logarithmic negativity and Gaussian steering per mode pair),
//! with [`validity`] certifying the linearisation and [`sweep`] driving
//! single points, parameter sweeps and figure presets.

pub mod gaussian;
pub mod measures;
pub mod model;
pub mod sweep;
pub mod validity;

pub use gaussian::{CovarianceMatrix, DiffusionMatrix, DriftMatrix, Mode};
pub use measures::{MeasureReport, ModePair};
pub use model::{DriftConvention, EffectiveParams, PhysicalParams};
