use std::f64::consts::PI;

use super::{require, thermal_occupation, Result, GYROMAGNETIC_RATIO, SPEED_OF_LIGHT};

/// Laboratory-level inputs. Index 0 of every pair is subsystem 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    /// Kittel-mode frequencies (rad/s).
    pub omega_m: [f64; 2],
    /// Laser wavelength (m).
    pub wavelength: f64,
    /// Phonon frequencies (rad/s).
    pub omega_b: [f64; 2],
    /// Angle between incident and reflected light at the mirror (rad).
    pub mirror_angle: f64,
    pub kappa_c: f64,
    pub kappa_m: [f64; 2],
    pub gamma_b: [f64; 2],
    /// Single-photon optomechanical coupling (rad/s).
    pub bare_om_coupling: f64,
    /// Single-magnon magnomechanical couplings (rad/s).
    pub bare_mm_coupling: [f64; 2],
    /// Laser power (W).
    pub laser_power: f64,
    /// Microwave drive magnetic fields (T).
    pub drive_field: [f64; 2],
    /// Bias field (T). When set, magnon frequencies follow `γ H₀`.
    pub bias_field: Option<f64>,
    /// Spin density (m⁻³).
    pub spin_density: f64,
    /// Bridge volume (m³).
    pub volume: f64,
    /// Bath temperature (K).
    pub temperature: f64,
    /// Bare drive detunings `ω_c - ω_L` and `ω_m - ω_0` (rad/s).
    pub delta_c: f64,
    pub delta_m: [f64; 2],
}

impl PhysicalParams {
    /// Laboratory values behind the reference operating point.
    pub fn baseline() -> Self {
        let two_pi = 2.0 * PI;
        let omega_b = two_pi * 40e6;
        PhysicalParams {
            omega_m: [two_pi * 10e9; 2],
            wavelength: 1064e-9,
            omega_b: [omega_b; 2],
            mirror_angle: PI / 3.0,
            kappa_c: two_pi * 2e6,
            kappa_m: [two_pi * 1e6; 2],
            gamma_b: [two_pi * 100.0; 2],
            bare_om_coupling: two_pi * 1e3,
            bare_mm_coupling: [two_pi * 20.0; 2],
            laser_power: 6.67e-3,
            drive_field: [8.7e-4, 4.4e-4],
            bias_field: None,
            spin_density: 4.22e27,
            volume: 5e-6 * 2e-6 * 1e-6,
            temperature: 0.01,
            delta_c: omega_b,
            delta_m: [-omega_b; 2],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for j in 0..2 {
            require("omega_m", self.omega_m[j], self.omega_m[j] >= 0.0, "must be non-negative")?;
            require("omega_b", self.omega_b[j], self.omega_b[j] > 0.0, "phonon frequency must be positive")?;
            require("kappa_m", self.kappa_m[j], self.kappa_m[j] >= 0.0, "must be non-negative")?;
            require("gamma_b", self.gamma_b[j], self.gamma_b[j] >= 0.0, "must be non-negative")?;
            require("g_m", self.bare_mm_coupling[j], self.bare_mm_coupling[j] >= 0.0, "must be non-negative")?;
            require("H_d", self.drive_field[j], self.drive_field[j] >= 0.0, "must be non-negative")?;
            require("delta_m", self.delta_m[j], true, "")?;
        }
        require("lambda_L", self.wavelength, self.wavelength > 0.0, "must be positive")?;
        require("Phi", self.mirror_angle, (0.0..PI).contains(&self.mirror_angle), "must lie in [0, pi)")?;
        require("kappa_c", self.kappa_c, self.kappa_c >= 0.0, "must be non-negative")?;
        require("g0", self.bare_om_coupling, self.bare_om_coupling >= 0.0, "must be non-negative")?;
        require("P_L", self.laser_power, self.laser_power >= 0.0, "must be non-negative")?;
        if let Some(h0) = self.bias_field {
            require("H_0", h0, h0 >= 0.0, "must be non-negative")?;
        }
        require("rho", self.spin_density, self.spin_density >= 0.0, "must be non-negative")?;
        require("V", self.volume, self.volume > 0.0, "must be positive")?;
        require("T", self.temperature, self.temperature >= 0.0, "must be non-negative")?;
        require("delta_c", self.delta_c, true, "")?;
        Ok(())
    }

    /// Laser angular frequency `2πc/λ`.
    pub fn laser_frequency(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / self.wavelength
    }

    pub fn magnon_frequencies(&self) -> [f64; 2] {
        match self.bias_field {
            Some(h0) => [GYROMAGNETIC_RATIO * h0; 2],
            None => self.omega_m,
        }
    }

    /// Ring factor `cos²(Φ/2)` multiplying the optomechanical coupling.
    pub fn ring_factor(&self) -> f64 {
        (self.mirror_angle / 2.0).cos().powi(2)
    }
}

/// Solver-level inputs of the linearised fluctuation dynamics.
///
/// Index 0 of every pair belongs to subsystem 1 (magnon m1, phonon b1).
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveParams {
    /// Effective cavity detuning.
    pub delta_c: f64,
    /// Effective magnon detunings.
    pub delta_m: [f64; 2],
    /// Optomechanical coupling `G₀` (real, ≥ 0).
    pub om_coupling: f64,
    /// Magnomechanical couplings `G_mj` (real, ≥ 0).
    pub mm_coupling: [f64; 2],
    pub kappa_c: f64,
    pub kappa_m: [f64; 2],
    pub gamma_b: [f64; 2],
    pub omega_b: [f64; 2],
    /// Mean thermal occupations of the cavity, magnon and phonon baths.
    pub n_c: f64,
    pub n_m: [f64; 2],
    pub n_b: [f64; 2],
}

impl EffectiveParams {
    /// Reference operating point: `Δ̃_c = -Δ̃_m = ω_b`, `G₀/2π = 3 MHz`,
    /// `G_m1/2π = 2 MHz`, `G_m2 = G_m1/2`, at 10 mK.
    pub fn baseline() -> Self {
        let two_pi = 2.0 * PI;
        let omega_b = two_pi * 40e6;
        let mut e = EffectiveParams {
            delta_c: omega_b,
            delta_m: [-omega_b; 2],
            om_coupling: two_pi * 3e6,
            mm_coupling: [two_pi * 2e6, two_pi * 1e6],
            kappa_c: two_pi * 2e6,
            kappa_m: [two_pi * 1e6; 2],
            gamma_b: [two_pi * 100.0; 2],
            omega_b: [omega_b; 2],
            n_c: 0.0,
            n_m: [0.0; 2],
            n_b: [0.0; 2],
        };
        let laser = 2.0 * PI * SPEED_OF_LIGHT / 1064e-9;
        e.set_temperature(0.01, laser, [two_pi * 10e9; 2])
            .expect("baseline frequencies are positive");
        e
    }

    /// Fills every occupation from a common bath temperature.
    pub fn set_temperature(
        &mut self,
        temperature: f64,
        cavity_frequency: f64,
        magnon_frequencies: [f64; 2],
    ) -> Result<()> {
        self.n_c = thermal_occupation(cavity_frequency, temperature)?;
        for j in 0..2 {
            self.n_m[j] = thermal_occupation(magnon_frequencies[j], temperature)?;
            self.n_b[j] = thermal_occupation(self.omega_b[j], temperature)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        require("delta_c", self.delta_c, true, "")?;
        require("G0", self.om_coupling, self.om_coupling >= 0.0, "must be non-negative")?;
        require("kappa_c", self.kappa_c, self.kappa_c >= 0.0, "must be non-negative")?;
        require("n_c", self.n_c, self.n_c >= 0.0, "must be non-negative")?;
        for j in 0..2 {
            require("delta_m", self.delta_m[j], true, "")?;
            require("G_m", self.mm_coupling[j], self.mm_coupling[j] >= 0.0, "must be non-negative")?;
            require("kappa_m", self.kappa_m[j], self.kappa_m[j] >= 0.0, "must be non-negative")?;
            require("gamma_b", self.gamma_b[j], self.gamma_b[j] >= 0.0, "must be non-negative")?;
            require("omega_b", self.omega_b[j], self.omega_b[j] > 0.0, "phonon frequency must be positive")?;
            require("n_m", self.n_m[j], self.n_m[j] >= 0.0, "must be non-negative")?;
            require("n_b", self.n_b[j], self.n_b[j] >= 0.0, "must be non-negative")?;
        }
        Ok(())
    }

    /// Same system with subsystems 1 and 2 exchanged.
    pub fn exchanged(&self) -> Self {
        let mut e = self.clone();
        e.delta_m.swap(0, 1);
        e.mm_coupling.swap(0, 1);
        e.kappa_m.swap(0, 1);
        e.gamma_b.swap(0, 1);
        e.omega_b.swap(0, 1);
        e.n_m.swap(0, 1);
        e.n_b.swap(0, 1);
        e
    }

    /// Multiplies every rate, frequency and coupling by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut e = self.clone();
        e.delta_c *= s;
        e.om_coupling *= s;
        e.kappa_c *= s;
        for j in 0..2 {
            e.delta_m[j] *= s;
            e.mm_coupling[j] *= s;
            e.kappa_m[j] *= s;
            e.gamma_b[j] *= s;
            e.omega_b[j] *= s;
        }
        e
    }
}
