//! Physics of the ring: parameter sets, thermal baths, the classical steady
//! state and the linearised drift/diffusion matrices.
//!
//! All frequencies and rates are angular (rad/s). Conversion from the
//! linear-frequency values used in config files happens in
//! [`crate::sweep`].

mod matrices;
mod params;
mod steady_state;
mod thermal;

use thiserror::Error;

pub use matrices::{build_diffusion, build_drift, DriftConvention};
pub use params::{EffectiveParams, PhysicalParams};
pub use steady_state::{
    derive_drive_amplitudes, derive_effective_couplings, solve_steady_state, CouplingDiagnostics,
    DriveAmplitudes, SteadyState, SteadyStateMode,
};
pub use thermal::thermal_occupation;
pub(crate) use steady_state::magnon_amplitudes_from_couplings;

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;
/// Speed of light (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Electron gyromagnetic ratio, 2π × 28 GHz/T, in rad/(s T).
pub const GYROMAGNETIC_RATIO: f64 = 2.0 * std::f64::consts::PI * 28e9;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("frequency must be positive, got {0:e}")]
    NonPositiveFrequency(f64),
    #[error("invalid parameter `{name}` = {value:e}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("steady-state iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

pub(crate) fn require(
    name: &'static str,
    value: f64,
    ok: bool,
    reason: &'static str,
) -> Result<()> {
    if !value.is_finite() {
        return Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        });
    }
    if ok {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}
