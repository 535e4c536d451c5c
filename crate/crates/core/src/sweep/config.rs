//! Flat key/value run configuration.
//!
//! Frequencies and rates are linear frequencies in Hz (the `/2π` values);
//! they are converted to rad/s when parameters are assembled. Keys with a
//! unit suffix (`T_kelvin`, `Phi_rad`, `P_L_W`, ...) are taken as-is.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use crate::model::{
    DriftConvention, EffectiveParams, PhysicalParams, SteadyStateMode, SPEED_OF_LIGHT,
};
use crate::validity::DEFAULT_MARGIN;

use super::{Result, SweepError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    /// Linear frequency; stored ×2π internally.
    Hertz,
    /// Used as given.
    Plain,
}

struct Key {
    name: &'static str,
    unit: Unit,
    default: f64,
}

const fn hz(name: &'static str, default: f64) -> Key {
    Key {
        name,
        unit: Unit::Hertz,
        default,
    }
}

const fn plain(name: &'static str, default: f64) -> Key {
    Key {
        name,
        unit: Unit::Plain,
        default,
    }
}

/// Every numeric key with its baseline value, in metadata order.
const KEYS: &[Key] = &[
    hz("omega_b1", 40e6),
    hz("omega_b2", 40e6),
    hz("kappa_c", 2e6),
    hz("kappa_m1", 1e6),
    hz("kappa_m2", 1e6),
    hz("gamma_b1", 100.0),
    hz("gamma_b2", 100.0),
    hz("delta_c", 40e6),
    hz("delta_m1", -40e6),
    hz("delta_m2", -40e6),
    hz("G0", 3e6),
    hz("G_m1", 2e6),
    hz("G_m2", 1e6),
    plain("T_kelvin", 0.01),
    plain("Phi_rad", PI / 3.0),
    hz("omega_m1", 10e9),
    hz("omega_m2", 10e9),
    plain("lambda_L_m", 1064e-9),
    plain("P_L_W", 6.67e-3),
    plain("H_d1_T", 8.7e-4),
    plain("H_d2_T", 4.4e-4),
    hz("g0", 1e3),
    hz("g_m1", 20.0),
    hz("g_m2", 20.0),
    plain("rho_m3", 4.22e27),
    plain("V_m3", 5e-6 * 2e-6 * 1e-6),
];

/// Sweep keys that set both subsystems at once.
const COMPOSITES: &[(&str, [&str; 2])] = &[
    ("G_m", ["G_m1", "G_m2"]),
    ("delta_m", ["delta_m1", "delta_m2"]),
    ("gamma_b", ["gamma_b1", "gamma_b2"]),
    ("omega_b", ["omega_b1", "omega_b2"]),
    ("kappa_m", ["kappa_m1", "kappa_m2"]),
    ("g_m", ["g_m1", "g_m2"]),
];

const ALIASES: &[(&str, &str)] = &[("T", "T_kelvin"), ("Phi", "Phi_rad")];

fn canonical(name: &str) -> &str {
    ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, target)| target)
}

fn key(name: &str) -> Option<&'static Key> {
    let name = canonical(name);
    KEYS.iter().find(|k| k.name == name)
}

/// Which parameter set drives the calculation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workflow {
    /// Effective detunings and couplings given directly.
    #[default]
    Effective,
    /// Couplings derived from drive powers and fields via the mean-field
    /// steady state.
    Physical,
}

impl Workflow {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "effective" => Some(Workflow::Effective),
            "physical" => Some(Workflow::Physical),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Workflow::Effective => "effective",
            Workflow::Physical => "physical",
        }
    }
}

/// What to do when the drift matrix is not Hurwitz-stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StabilityPolicy {
    /// Refuse: single points fail with `NotStable`, sweep rows become NaN.
    #[default]
    Require,
    /// Solve the Lyapunov equation anyway and flag the result `stable = 0`.
    /// The solution is then a formal fixed point, not a reachable state.
    Formal,
}

impl StabilityPolicy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "require" => Some(StabilityPolicy::Require),
            "formal" => Some(StabilityPolicy::Formal),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StabilityPolicy::Require => "require",
            StabilityPolicy::Formal => "formal",
        }
    }
}

fn steady_state_name(m: SteadyStateMode) -> &'static str {
    match m {
        SteadyStateMode::Exact => "exact",
        SteadyStateMode::Approximate => "approximate",
    }
}

fn parse_steady_state(s: &str) -> Option<SteadyStateMode> {
    match s {
        "exact" => Some(SteadyStateMode::Exact),
        "approximate" => Some(SteadyStateMode::Approximate),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub workflow: Workflow,
    pub drift_convention: DriftConvention,
    pub stability: StabilityPolicy,
    pub steady_state: SteadyStateMode,
    /// Kerr coefficient in Hz; `None` selects the volume-scaled default.
    pub kerr_hz: Option<f64>,
    pub validity_margin: f64,
    /// When set, `G0 = G0_tilde · cos²(Φ/2)` in the effective workflow.
    pub g0_tilde: Option<f64>,
    values: BTreeMap<&'static str, f64>,
}

impl Default for Config {
    fn default() -> Self {
        Self::baseline()
    }
}

impl Config {
    /// Reference operating point at the optimum detunings and 10 mK.
    pub fn baseline() -> Self {
        Config {
            workflow: Workflow::Effective,
            drift_convention: DriftConvention::default(),
            stability: StabilityPolicy::default(),
            steady_state: SteadyStateMode::default(),
            kerr_hz: None,
            validity_margin: DEFAULT_MARGIN,
            g0_tilde: None,
            values: KEYS.iter().map(|k| (k.name, k.default)).collect(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| SweepError::Config(e.to_string()))?;
        let mut config = Config::baseline();
        for (name, value) in &table {
            config.apply(name, value)?;
        }
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SweepError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_toml_str(&text)
    }

    fn apply(&mut self, name: &str, value: &toml::Value) -> Result<()> {
        let text = || {
            value
                .as_str()
                .ok_or_else(|| SweepError::Config(format!("`{name}` must be a string")))
        };
        let bad = |v: &str| SweepError::Config(format!("invalid value `{v}` for `{name}`"));
        match name {
            "mode" => {
                let s = text()?;
                self.workflow = Workflow::parse(s).ok_or_else(|| bad(s))?;
            }
            "drift_convention" => {
                let s = text()?;
                self.drift_convention = DriftConvention::parse(s).ok_or_else(|| bad(s))?;
            }
            "stability" => {
                let s = text()?;
                self.stability = StabilityPolicy::parse(s).ok_or_else(|| bad(s))?;
            }
            "steady_state" => {
                let s = text()?;
                self.steady_state = parse_steady_state(s).ok_or_else(|| bad(s))?;
            }
            _ => {
                let x = match value {
                    toml::Value::Float(f) => *f,
                    toml::Value::Integer(i) => *i as f64,
                    _ => return Err(SweepError::Config(format!("`{name}` must be a number"))),
                };
                self.set(name, x)?;
            }
        }
        Ok(())
    }

    /// Sets a numeric key (config units). Accepts the aliases `T`, `Phi`
    /// and the two-subsystem keys `G_m`, `delta_m`, `gamma_b`, `omega_b`,
    /// `kappa_m`, `g_m`.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(SweepError::Config(format!("`{name}` must be finite")));
        }
        match name {
            "kerr_hz" => self.kerr_hz = Some(value),
            "validity_margin" => {
                if value <= 0.0 {
                    return Err(SweepError::Config("`validity_margin` must be positive".into()));
                }
                self.validity_margin = value;
            }
            "G0_tilde" => self.g0_tilde = Some(value),
            _ => {
                if let Some((_, parts)) = COMPOSITES.iter().find(|(c, _)| *c == name) {
                    for part in parts {
                        self.values.insert(key(part).expect("composite parts exist").name, value);
                    }
                } else {
                    let k = key(name).ok_or_else(|| SweepError::UnknownKey(name.to_string()))?;
                    self.values.insert(k.name, value);
                }
            }
        }
        Ok(())
    }

    /// Value of a numeric key in config units. Composite keys report the
    /// subsystem-1 value.
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "kerr_hz" => self.kerr_hz,
            "validity_margin" => Some(self.validity_margin),
            "G0_tilde" => self.g0_tilde,
            _ => {
                let name = COMPOSITES
                    .iter()
                    .find(|(c, _)| *c == name)
                    .map_or(name, |(_, parts)| parts[0]);
                key(name).map(|k| self.values[k.name])
            }
        }
    }

    /// Whether `name` can be swept.
    pub fn is_key(name: &str) -> bool {
        matches!(name, "kerr_hz" | "validity_margin" | "G0_tilde")
            || COMPOSITES.iter().any(|(c, _)| *c == name)
            || key(name).is_some()
    }

    /// Value in internal units (rad/s for frequency keys).
    fn si(&self, name: &str) -> f64 {
        let k = key(name).expect("internal key names are valid");
        let v = self.values[k.name];
        match k.unit {
            Unit::Hertz => 2.0 * PI * v,
            Unit::Plain => v,
        }
    }

    fn pair(&self, prefix: &str) -> [f64; 2] {
        [self.si(&format!("{prefix}1")), self.si(&format!("{prefix}2"))]
    }

    pub fn laser_frequency(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / self.si("lambda_L_m")
    }

    pub fn temperature(&self) -> f64 {
        self.si("T_kelvin")
    }

    /// Spin count `ρV`.
    pub fn spins(&self) -> f64 {
        self.si("rho_m3") * self.si("V_m3")
    }

    /// Kerr coefficient in rad/s.
    pub fn kerr_coefficient(&self) -> f64 {
        match self.kerr_hz {
            Some(k) => 2.0 * PI * k,
            None => crate::validity::default_kerr(self.si("V_m3")),
        }
    }

    pub fn bare_mm_coupling(&self) -> [f64; 2] {
        self.pair("g_m")
    }

    /// Effective parameters as written in the config (effective workflow).
    pub fn effective_params(&self) -> Result<EffectiveParams> {
        let phi = self.si("Phi_rad");
        let om_coupling = match self.g0_tilde {
            Some(t) => 2.0 * PI * t * (phi / 2.0).cos().powi(2),
            None => self.si("G0"),
        };
        let mut e = EffectiveParams {
            delta_c: self.si("delta_c"),
            delta_m: self.pair("delta_m"),
            om_coupling,
            mm_coupling: self.pair("G_m"),
            kappa_c: self.si("kappa_c"),
            kappa_m: self.pair("kappa_m"),
            gamma_b: self.pair("gamma_b"),
            omega_b: self.pair("omega_b"),
            n_c: 0.0,
            n_m: [0.0; 2],
            n_b: [0.0; 2],
        };
        e.validate()?;
        e.set_temperature(self.temperature(), self.laser_frequency(), self.pair("omega_m"))?;
        Ok(e)
    }

    /// Laboratory parameters (physical workflow). Detunings are the bare
    /// drive detunings.
    pub fn physical_params(&self) -> Result<PhysicalParams> {
        let p = PhysicalParams {
            omega_m: self.pair("omega_m"),
            wavelength: self.si("lambda_L_m"),
            omega_b: self.pair("omega_b"),
            mirror_angle: self.si("Phi_rad"),
            kappa_c: self.si("kappa_c"),
            kappa_m: self.pair("kappa_m"),
            gamma_b: self.pair("gamma_b"),
            bare_om_coupling: self.si("g0"),
            bare_mm_coupling: self.pair("g_m"),
            laser_power: self.si("P_L_W"),
            drive_field: [self.si("H_d1_T"), self.si("H_d2_T")],
            bias_field: None,
            spin_density: self.si("rho_m3"),
            volume: self.si("V_m3"),
            temperature: self.si("T_kelvin"),
            delta_c: self.si("delta_c"),
            delta_m: self.pair("delta_m"),
        };
        p.validate()?;
        Ok(p)
    }

    /// `key = value` lines describing the full configuration.
    pub fn metadata(&self) -> Vec<String> {
        let mut out = vec![
            format!("mode = {}", self.workflow.name()),
            format!("drift_convention = {}", self.drift_convention.name()),
            format!("stability = {}", self.stability.name()),
            format!("steady_state = {}", steady_state_name(self.steady_state)),
        ];
        out.extend(KEYS.iter().map(|k| format!("{} = {}", k.name, self.values[k.name])));
        if let Some(t) = self.g0_tilde {
            out.push(format!("G0_tilde = {t}"));
        }
        match self.kerr_hz {
            Some(k) => out.push(format!("kerr_hz = {k}")),
            None => out.push(format!(
                "kerr_hz = {} (1 mm sphere value 0.1 nHz scaled by inverse volume)",
                self.kerr_coefficient() / (2.0 * PI)
            )),
        }
        out.push(format!("validity_margin = {}", self.validity_margin));
        out
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.metadata() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
