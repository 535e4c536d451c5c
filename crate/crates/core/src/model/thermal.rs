use super::{ModelError, Result, HBAR, K_B};

/// Bose–Einstein occupation `1/(exp(ħω/k_B T) - 1)` of a bath mode.
///
/// Returns exactly 0 at `T = 0`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if omega.is_nan() || omega <= 0.0 || omega.is_infinite() {
        return Err(ModelError::NonPositiveFrequency(omega));
    }
    super::require(
        "temperature",
        temperature,
        temperature >= 0.0,
        "must be non-negative",
    )?;
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = HBAR * omega / (K_B * temperature);
    Ok(1.0 / x.exp_m1())
}
