//! Sweeps behind each published figure panel.
//!
//! All presets start from [`Config::baseline`]. Axis ranges are read off the
//! plotted axes and are estimates. Every point of the published curves lies
//! outside the Hurwitz-stable region of the model, so presets evaluate under
//! [`StabilityPolicy::Formal`] and flag each row `stable = 0`.

use crate::measures::DEFAULT_PAIRS;

use super::{Axis, Config, Result, StabilityPolicy, SweepError, SweepSpec};

pub const PRESET_IDS: [&str; 19] = [
    "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f", "fig2g", "fig2h", "fig3",
    "fig3-inset", "fig4a", "fig4b", "fig4c", "fig4d", "fig5", "fig6a", "fig6b", "fig6c", "fig6d",
];

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub description: &'static str,
    pub axis: Axis,
    /// Values applied on top of the baseline before sweeping.
    pub overrides: Vec<(&'static str, f64)>,
}

impl FigurePreset {
    pub fn spec(&self) -> Result<SweepSpec> {
        let mut config = Config::baseline();
        config.stability = StabilityPolicy::Formal;
        for (k, v) in &self.overrides {
            config.set(k, *v)?;
        }
        Ok(SweepSpec {
            config,
            axes: vec![self.axis.clone()],
            pairs: DEFAULT_PAIRS.to_vec(),
        })
    }
}

const DETUNING_POINTS: usize = 161;

pub fn preset(id: &str) -> Result<FigurePreset> {
    let axis = |key: &str, start: f64, stop: f64, points: usize| Axis::linear(key, start, stop, points);
    let (description, axis, overrides) = match id {
        "fig2a" | "fig2e" => (
            "cavity detuning sweep (entanglement / steering)",
            axis("delta_c", 20e6, 60e6, DETUNING_POINTS)?,
            vec![],
        ),
        "fig2b" | "fig2f" => (
            "magnon 1 detuning sweep (entanglement / steering)",
            axis("delta_m1", -60e6, -20e6, DETUNING_POINTS)?,
            vec![],
        ),
        "fig2c" | "fig2g" => (
            "magnon 2 detuning sweep (entanglement / steering)",
            axis("delta_m2", -60e6, -20e6, DETUNING_POINTS)?,
            vec![],
        ),
        "fig2d" | "fig2h" => (
            "bath temperature sweep (entanglement / steering)",
            axis("T_kelvin", 0.0, 0.8, 161)?,
            vec![],
        ),
        "fig3" => (
            "optomechanical coupling sweep",
            axis("G0", 0.5e6, 6e6, 111)?,
            vec![],
        ),
        "fig3-inset" => (
            "mirror angle sweep at G0_tilde = 4 MHz",
            axis("Phi_rad", 0.0, 3.1, 125)?,
            vec![("G0_tilde", 4e6)],
        ),
        "fig4a" | "fig4c" => (
            "magnomechanical coupling 1 sweep (entanglement / steering)",
            axis("G_m1", 0.1e6, 3e6, 146)?,
            vec![],
        ),
        "fig4b" | "fig4d" => (
            "magnomechanical coupling 2 sweep (entanglement / steering)",
            axis("G_m2", 0.1e6, 3e6, 146)?,
            vec![],
        ),
        "fig5" => (
            "equal magnomechanical couplings G_m1 = G_m2 = G_m",
            axis("G_m", 0.1e6, 3e6, 146)?,
            vec![],
        ),
        "fig6a" | "fig6c" => (
            "phonon 1 damping sweep (entanglement / steering)",
            Axis::log("gamma_b1", 1e2, 1e6, 81)?,
            vec![],
        ),
        "fig6b" | "fig6d" => (
            "phonon 2 damping sweep (entanglement / steering)",
            Axis::log("gamma_b2", 1e2, 1e6, 81)?,
            vec![],
        ),
        _ => return Err(SweepError::UnknownPreset(id.to_string())),
    };
    let id = PRESET_IDS.iter().find(|&&p| p == id).copied().expect("matched above");
    Ok(FigurePreset {
        id,
        description,
        axis,
        overrides,
    })
}
