use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_complex::Complex64;

use super::{
    require, EffectiveParams, ModelError, PhysicalParams, Result, GYROMAGNETIC_RATIO, HBAR,
};

const RELAXATION: f64 = 0.5;
const MAX_ITERATIONS: usize = 10_000;
const TOLERANCE: f64 = 1e-10;
/// Phase deviation (rad) above which amplitudes are no longer "approximately
/// imaginary" and the real-coupling reduction degrades.
pub const PHASE_WARNING_RAD: f64 = 0.1;

/// How the mean-field amplitudes are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SteadyStateMode {
    /// Damped fixed-point iteration of the full self-consistent equations.
    #[default]
    Exact,
    /// `α ≈ E/(iΔ)` and `m_j ≈ Ω_j/(iΔ_mj)` with the configured detunings
    /// taken as the effective ones (valid for `|Δ| ≫ κ`).
    Approximate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveAmplitudes {
    /// Cavity drive `E` (rad/s).
    pub cavity: f64,
    /// Magnon Rabi frequencies `Ω_j` (rad/s).
    pub rabi: [f64; 2],
    /// Number of spins `N₀ = ρV`.
    pub spins: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub alpha: Complex64,
    pub magnon: [Complex64; 2],
    /// Dimensionless phonon displacements.
    pub displacement: [f64; 2],
    pub delta_c_eff: f64,
    pub delta_m_eff: [f64; 2],
    /// Relative fixed-point residual on the displacements.
    pub residual: f64,
    pub iterations: usize,
    pub mode: SteadyStateMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingDiagnostics {
    /// Distance of `arg α_s` from the imaginary axis (rad).
    pub cavity_phase_deviation: f64,
    pub magnon_phase_deviation: [f64; 2],
    pub phase_warning: bool,
}

pub fn derive_drive_amplitudes(p: &PhysicalParams) -> Result<DriveAmplitudes> {
    p.validate()?;
    let spins = p.spin_density * p.volume;
    let prefactor = 5f64.sqrt() / 4.0 * GYROMAGNETIC_RATIO * spins.sqrt();
    let rabi = [prefactor * p.drive_field[0], prefactor * p.drive_field[1]];
    let cavity = (p.kappa_c * p.laser_power / (HBAR * p.laser_frequency())).sqrt();
    Ok(DriveAmplitudes {
        cavity,
        rabi,
        spins,
    })
}

/// Signed cavity–phonon couplings `ḡ_0j = -(-1)^j g₀ cos²(Φ/2)`.
fn ring_couplings(p: &PhysicalParams) -> [f64; 2] {
    let g = p.bare_om_coupling * p.ring_factor();
    [g, -g]
}

struct Evaluation {
    alpha: Complex64,
    magnon: [Complex64; 2],
    displacement: [f64; 2],
    delta_c: f64,
    delta_m: [f64; 2],
}

fn evaluate(p: &PhysicalParams, drives: &DriveAmplitudes, q: [f64; 2]) -> Evaluation {
    let gbar = ring_couplings(p);
    let delta_c = p.delta_c + gbar[0] * q[0] + gbar[1] * q[1];
    let alpha = drives.cavity / Complex64::new(p.kappa_c, delta_c);
    let mut magnon = [Complex64::new(0.0, 0.0); 2];
    let mut delta_m = [0.0; 2];
    let mut displacement = [0.0; 2];
    for j in 0..2 {
        delta_m[j] = p.delta_m[j] + p.bare_mm_coupling[j] * q[j];
        magnon[j] = drives.rabi[j] / Complex64::new(p.kappa_m[j], delta_m[j]);
    }
    for j in 0..2 {
        displacement[j] = -(gbar[j] * alpha.norm_sqr()
            + p.bare_mm_coupling[j] * magnon[j].norm_sqr())
            / p.omega_b[j];
    }
    Evaluation {
        alpha,
        magnon,
        displacement,
        delta_c,
        delta_m,
    }
}

/// Mean-field amplitudes and displacements of the driven ring.
pub fn solve_steady_state(p: &PhysicalParams, mode: SteadyStateMode) -> Result<SteadyState> {
    let drives = derive_drive_amplitudes(p)?;
    match mode {
        SteadyStateMode::Approximate => approximate(p, &drives),
        SteadyStateMode::Exact => exact(p, &drives),
    }
}

fn approximate(p: &PhysicalParams, drives: &DriveAmplitudes) -> Result<SteadyState> {
    require("delta_c", p.delta_c, p.delta_c != 0.0, "approximate amplitudes need a nonzero detuning")?;
    let alpha = drives.cavity / Complex64::new(0.0, p.delta_c);
    let mut magnon = [Complex64::new(0.0, 0.0); 2];
    for j in 0..2 {
        require("delta_m", p.delta_m[j], p.delta_m[j] != 0.0, "approximate amplitudes need a nonzero detuning")?;
        magnon[j] = drives.rabi[j] / Complex64::new(0.0, p.delta_m[j]);
    }
    let gbar = ring_couplings(p);
    let displacement = [0, 1].map(|j| {
        -(gbar[j] * alpha.norm_sqr() + p.bare_mm_coupling[j] * magnon[j].norm_sqr()) / p.omega_b[j]
    });
    Ok(SteadyState {
        alpha,
        magnon,
        displacement,
        delta_c_eff: p.delta_c,
        delta_m_eff: p.delta_m,
        residual: 0.0,
        iterations: 0,
        mode: SteadyStateMode::Approximate,
    })
}

fn exact(p: &PhysicalParams, drives: &DriveAmplitudes) -> Result<SteadyState> {
    let mut q = [0.0; 2];
    let mut residual = f64::INFINITY;
    for iteration in 1..=MAX_ITERATIONS {
        let eval = evaluate(p, drives, q);
        let next = eval.displacement;
        let diff = ((next[0] - q[0]).powi(2) + (next[1] - q[1]).powi(2)).sqrt();
        let size = (next[0].powi(2) + next[1].powi(2)).sqrt();
        residual = if diff == 0.0 { 0.0 } else { diff / size.max(f64::MIN_POSITIVE) };
        if !residual.is_finite() {
            break;
        }
        if residual <= TOLERANCE {
            let eval = evaluate(p, drives, next);
            return Ok(SteadyState {
                alpha: eval.alpha,
                magnon: eval.magnon,
                displacement: next,
                delta_c_eff: eval.delta_c,
                delta_m_eff: eval.delta_m,
                residual,
                iterations: iteration,
                mode: SteadyStateMode::Exact,
            });
        }
        for j in 0..2 {
            q[j] += RELAXATION * (next[j] - q[j]);
        }
    }
    Err(ModelError::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual,
    })
}

fn phase_deviation(z: Complex64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        (z.arg().abs() - FRAC_PI_2).abs()
    }
}

/// Real effective couplings `G₀ = √2 g₀ |α_s| cos²(Φ/2)` and
/// `G_mj = √2 g_mj |m_js|`, with detunings and bath occupations taken from
/// the steady state and the physical parameters.
pub fn derive_effective_couplings(
    p: &PhysicalParams,
    s: &SteadyState,
) -> Result<(EffectiveParams, CouplingDiagnostics)> {
    p.validate()?;
    let mut e = EffectiveParams {
        delta_c: s.delta_c_eff,
        delta_m: s.delta_m_eff,
        om_coupling: SQRT_2 * p.bare_om_coupling * s.alpha.norm() * p.ring_factor(),
        mm_coupling: [0, 1].map(|j| SQRT_2 * p.bare_mm_coupling[j] * s.magnon[j].norm()),
        kappa_c: p.kappa_c,
        kappa_m: p.kappa_m,
        gamma_b: p.gamma_b,
        omega_b: p.omega_b,
        n_c: 0.0,
        n_m: [0.0; 2],
        n_b: [0.0; 2],
    };
    e.set_temperature(p.temperature, p.laser_frequency(), p.magnon_frequencies())?;
    e.validate()?;

    let cavity_phase_deviation = phase_deviation(s.alpha);
    let magnon_phase_deviation = s.magnon.map(phase_deviation);
    let phase_warning = cavity_phase_deviation > PHASE_WARNING_RAD
        || magnon_phase_deviation.iter().any(|&d| d > PHASE_WARNING_RAD);
    Ok((
        e,
        CouplingDiagnostics {
            cavity_phase_deviation,
            magnon_phase_deviation,
            phase_warning,
        },
    ))
}

/// Infers mean-field magnon amplitudes and Rabi frequencies from effective
/// couplings, inverting `G_mj = √2 g_mj |m_js|` and
/// `|m_js| = Ω_j / |iΔ̃_mj + κ_mj|`.
pub(crate) fn magnon_amplitudes_from_couplings(
    e: &EffectiveParams,
    bare_mm_coupling: [f64; 2],
) -> ([f64; 2], [f64; 2]) {
    let mut amplitude = [0.0; 2];
    let mut rabi = [0.0; 2];
    for j in 0..2 {
        if bare_mm_coupling[j] > 0.0 {
            amplitude[j] = e.mm_coupling[j] / (SQRT_2 * bare_mm_coupling[j]);
        }
        rabi[j] = amplitude[j] * e.delta_m[j].hypot(e.kappa_m[j]);
    }
    (amplitude, rabi)
}
