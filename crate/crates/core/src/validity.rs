//! Checks that the mean-field amplitudes stay inside the regime where the
//! linearised, Kerr-free magnon model holds.

use std::f64::consts::PI;

use crate::model::SteadyState;

/// Default factor used to turn "much less than" into a strict inequality.
pub const DEFAULT_MARGIN: f64 = 0.1;

/// Kerr coefficient of a 1 mm diameter YIG sphere (rad/s).
pub const SPHERE_KERR: f64 = 2.0 * PI * 0.1e-9;
/// Volume of that sphere (m³).
pub const SPHERE_VOLUME: f64 = 4.0 / 3.0 * PI * 0.5e-3 * 0.5e-3 * 0.5e-3;

/// Kerr coefficient of a sample of the given volume, scaling the sphere
/// value by inverse volume.
pub fn default_kerr(volume: f64) -> f64 {
    SPHERE_KERR * SPHERE_VOLUME / volume
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnonNumberCheck {
    /// `|m_s|² / (5 N₀)`.
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrCheck {
    /// `Ω / |m_s|³`, the coefficient at which the Kerr shift equals the drive.
    pub critical: f64,
    /// `margin · Ω / |m_s|³`.
    pub bound: f64,
    pub pass: bool,
}

/// Occupation check for one magnon of amplitude `|m_s|`.
pub fn magnon_number(amplitude: f64, spins: f64, margin: f64) -> MagnonNumberCheck {
    let ratio = amplitude * amplitude / (5.0 * spins);
    MagnonNumberCheck {
        ratio,
        pass: ratio < margin,
    }
}

/// Kerr check for one magnon of amplitude `|m_s|` under Rabi drive `Ω`.
pub fn kerr(amplitude: f64, rabi: f64, coefficient: f64, margin: f64) -> KerrCheck {
    let cube = amplitude.powi(3);
    let critical = if cube > 0.0 { rabi / cube } else { f64::INFINITY };
    KerrCheck {
        critical,
        bound: margin * critical,
        pass: coefficient * cube < margin * rabi || coefficient == 0.0 || cube == 0.0,
    }
}

pub fn check_magnon_number(s: &SteadyState, spins: f64, margin: f64) -> [MagnonNumberCheck; 2] {
    s.magnon.map(|m| magnon_number(m.norm(), spins, margin))
}

pub fn check_kerr(s: &SteadyState, rabi: [f64; 2], coefficient: f64, margin: f64) -> [KerrCheck; 2] {
    [0, 1].map(|j| kerr(s.magnon[j].norm(), rabi[j], coefficient, margin))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    pub margin: f64,
    /// Kerr coefficient the check was run with (rad/s).
    pub kerr_coefficient: f64,
    pub magnon_number: [MagnonNumberCheck; 2],
    pub kerr: [KerrCheck; 2],
}

impl ValidityReport {
    pub fn from_amplitudes(
        amplitude: [f64; 2],
        rabi: [f64; 2],
        spins: f64,
        kerr_coefficient: f64,
        margin: f64,
    ) -> Self {
        ValidityReport {
            margin,
            kerr_coefficient,
            magnon_number: amplitude.map(|a| magnon_number(a, spins, margin)),
            kerr: [0, 1].map(|j| kerr(amplitude[j], rabi[j], kerr_coefficient, margin)),
        }
    }

    pub fn from_steady_state(
        s: &SteadyState,
        rabi: [f64; 2],
        spins: f64,
        kerr_coefficient: f64,
        margin: f64,
    ) -> Self {
        ValidityReport {
            margin,
            kerr_coefficient,
            magnon_number: check_magnon_number(s, spins, margin),
            kerr: check_kerr(s, rabi, kerr_coefficient, margin),
        }
    }

    pub fn passed(&self) -> bool {
        self.magnon_number.iter().all(|c| c.pass) && self.kerr.iter().all(|c| c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occupation_ratio_matches_quoted_numbers() {
        let c = magnon_number(6.77e4, 4.22e10, DEFAULT_MARGIN);
        // 4.58e9 / 2.11e11
        assert!((c.ratio - 0.021_720).abs() < 1e-5, "{}", c.ratio);
        assert!(c.pass);
    }

    #[test]
    fn margin_boundary_fails() {
        let spins: f64 = 1e10;
        let amplitude = (0.1 * 5.0 * spins).sqrt();
        let c = magnon_number(amplitude, spins, 0.1);
        assert!(!c.pass, "{}", c.ratio);
        assert!(magnon_number(0.0, spins, 0.1).pass);
    }

    #[test]
    fn kerr_critical_value() {
        let c = kerr(6.77e4, 1.7e13, 0.0, DEFAULT_MARGIN);
        let mhz = c.critical / (2.0 * PI) * 1e3;
        assert!((mhz - 8.7197).abs() < 1e-3, "{mhz}");
        assert!(c.pass);
    }

    #[test]
    fn sphere_kerr_passes_comfortably() {
        let c = kerr(6.77e4, 1.7e13, SPHERE_KERR, DEFAULT_MARGIN);
        assert!(c.pass);
        assert!(SPHERE_KERR * 6.77e4f64.powi(3) < 1e-6 * 1.7e13);
    }

    #[test]
    fn default_kerr_scales_with_inverse_volume() {
        let bridge = 5e-6 * 2e-6 * 1e-6;
        let k = default_kerr(bridge) / (2.0 * PI);
        assert!((k - 5.236e-3).abs() < 1e-6, "{k}");
        assert_eq!(default_kerr(SPHERE_VOLUME), SPHERE_KERR);
    }

    #[test]
    fn monotone_in_amplitude() {
        let a = magnon_number(1e4, 1e10, 0.1);
        let b = magnon_number(2e4, 1e10, 0.1);
        assert!(b.ratio > a.ratio);
        let a = kerr(1e4, 1e12, 0.0, 0.1);
        let b = kerr(2e4, 1e12, 0.0, 0.1);
        assert!((a.critical / b.critical - 8.0).abs() < 1e-12);
    }

    #[test]
    fn undriven_magnon_passes() {
        let c = kerr(0.0, 0.0, SPHERE_KERR, DEFAULT_MARGIN);
        assert!(c.pass);
        assert!(c.critical.is_infinite());
    }
}
