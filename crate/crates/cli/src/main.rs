//! `omm`: single points, sweeps, figure presets and stability maps of the
//! ring opto-magnomechanical model, written as CSV.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use omm_core::measures::{parse_pairs, ModePair, DEFAULT_PAIRS};
use omm_core::sweep::{
    preset, run_point, run_sweep, stability_map, write_point, write_stability_map, write_sweep,
    Axis, Config, CsvOptions, PointResult, Scale, StabilityPolicy, SweepError, SweepSpec,
    Workflow, PRESET_IDS,
};
use omm_core::validity::ValidityReport;

#[derive(Parser)]
#[command(name = "omm", version, about = "Steady-state entanglement and steering in a ring opto-magnomechanical system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one parameter point.
    Point {
        #[command(flatten)]
        common: Common,
    },
    /// Sweep one or two parameters.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        axes: AxisArgs,
    },
    /// Run the sweep behind a published figure panel.
    Figure {
        /// Preset id, e.g. fig2a or fig3-inset (`list` prints them all).
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classify a grid by the sign of the drift's spectral abscissa.
    StabilityMap {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        axes: AxisArgs,
    },
    /// Check the linearisation (magnon number and Kerr bounds).
    Validate {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// TOML config; unset keys keep their baseline values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV (stdout when omitted for sweeps).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Mode pairs, e.g. c-m1,c-m2,m1-m2 or `all`.
    #[arg(long)]
    pairs: Option<String>,
    /// Parameter entry point.
    #[arg(long, value_parser = ["effective", "physical"])]
    mode: Option<String>,
    /// `require` rejects unstable points; `formal` solves them anyway.
    #[arg(long, value_parser = ["require", "formal"])]
    stability: Option<String>,
    /// Override a key, e.g. --set G0=4e6 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Omit the generation time from the CSV metadata.
    #[arg(long)]
    no_timestamp: bool,
    /// Worker threads for grid evaluation.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct AxisArgs {
    #[arg(long)]
    param: String,
    #[arg(long, allow_negative_numbers = true)]
    start: f64,
    #[arg(long, allow_negative_numbers = true)]
    stop: f64,
    #[arg(long)]
    points: usize,
    /// Logarithmic spacing.
    #[arg(long)]
    log: bool,
    #[arg(long, requires_all = ["start2", "stop2", "points2"])]
    param2: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    start2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    stop2: Option<f64>,
    #[arg(long)]
    points2: Option<usize>,
    #[arg(long)]
    log2: bool,
}

impl AxisArgs {
    fn axes(&self) -> Result<Vec<Axis>, SweepError> {
        let scale = |log| if log { Scale::Log } else { Scale::Linear };
        let mut axes = vec![Axis::new(&self.param, self.start, self.stop, self.points, scale(self.log))?];
        if let Some(key) = &self.param2 {
            let (start, stop, points) = (self.start2.unwrap(), self.stop2.unwrap(), self.points2.unwrap());
            axes.push(Axis::new(key, start, stop, points, scale(self.log2))?);
        }
        Ok(axes)
    }
}

impl Common {
    fn config(&self, base: Config) -> Result<Config, SweepError> {
        let mut config = match &self.config {
            Some(path) => Config::from_path(path)?,
            None => base,
        };
        if let Some(m) = &self.mode {
            config.workflow = Workflow::parse(m).expect("validated by clap");
        }
        if let Some(s) = &self.stability {
            config.stability = StabilityPolicy::parse(s).expect("validated by clap");
        }
        for o in &self.overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| SweepError::Config(format!("expected KEY=VALUE, got `{o}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| SweepError::Config(format!("`{v}` is not a number")))?;
            config.set(k.trim(), v)?;
        }
        Ok(config)
    }

    fn pairs(&self) -> Result<Vec<ModePair>, SweepError> {
        match &self.pairs {
            Some(s) => Ok(parse_pairs(s)?),
            None => Ok(DEFAULT_PAIRS.to_vec()),
        }
    }

    fn csv(&self, extra: Vec<String>) -> CsvOptions {
        CsvOptions {
            timestamp: !self.no_timestamp,
            extra,
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, SweepError> {
    File::create(path).map(BufWriter::new).map_err(|e| SweepError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Runs `f` on the `--out` file, or on stdout.
fn emit(
    out: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> Result<(), SweepError>,
) -> Result<(), SweepError> {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            f(&mut w)?;
            w.flush()?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)
        }
    }
}

fn kerr_note(config: &Config) {
    if config.kerr_hz.is_none() {
        eprintln!(
            "note: Kerr coefficient not set; using 2pi x {:.4e} Hz (1 mm sphere value 2pi x 0.1 nHz scaled by inverse volume)",
            config.kerr_coefficient() / (2.0 * PI)
        );
    }
}

fn print_validity(v: &ValidityReport) {
    let verdict = |p: bool| if p { "PASS" } else { "FAIL" };
    for j in 0..2 {
        let n = &v.magnon_number[j];
        println!(
            "magnon number m{}: |m|^2 / 5N = {:.4e} (< {}) {}",
            j + 1,
            n.ratio,
            v.margin,
            verdict(n.pass)
        );
    }
    for j in 0..2 {
        let k = &v.kerr[j];
        println!(
            "kerr m{}: K = 2pi x {:.4e} Hz, K_crit = 2pi x {:.4e} Hz, bound 2pi x {:.4e} Hz {}",
            j + 1,
            v.kerr_coefficient / (2.0 * PI),
            k.critical / (2.0 * PI),
            k.bound / (2.0 * PI),
            verdict(k.pass)
        );
    }
}

fn print_point(r: &PointResult) {
    println!(
        "stable = {} (spectral abscissa 2pi x {:.6e} Hz)",
        r.stable,
        r.spectral_abscissa / (2.0 * PI)
    );
    if !r.stable {
        println!("warning: drift is not Hurwitz; this is the formal Lyapunov solution, not a steady state");
    }
    println!(
        "physical = {} (min symplectic eigenvalue {:.9}), lyapunov residual {:.3e}",
        r.physical, r.min_symplectic_eigenvalue, r.lyapunov_residual
    );
    for m in &r.measures {
        let (a, b) = (m.pair.a().label(), m.pair.b().label());
        println!(
            "{}: E_N = {:.6}  S_{a}->{b} = {:.6}  S_{b}->{a} = {:.6}  S_N = {:.6}",
            m.pair, m.log_negativity, m.steering.a_to_b, m.steering.b_to_a, m.steering.asymmetry
        );
    }
    if let Some(d) = &r.diagnostics {
        println!(
            "phase deviation: cavity {:.4} rad, magnons {:.4} / {:.4} rad{}",
            d.cavity_phase_deviation,
            d.magnon_phase_deviation[0],
            d.magnon_phase_deviation[1],
            if d.phase_warning { " (warning: real-coupling gauge inaccurate)" } else { "" }
        );
    }
    print_validity(&r.validity);
}

fn run(cli: Cli) -> Result<(), SweepError> {
    match cli.command {
        Command::Point { common } => {
            let config = common.config(Config::baseline())?;
            let pairs = common.pairs()?;
            kerr_note(&config);
            let r = run_point(&config, &pairs)?;
            print_point(&r);
            if let Some(path) = &common.out {
                emit(Some(path), |w| write_point(w, &config, &r, &pairs, &common.csv(vec![])))?;
            }
        }
        Command::Sweep { common, axes } => {
            let spec = SweepSpec {
                config: common.config(Config::baseline())?,
                axes: axes.axes()?,
                pairs: common.pairs()?,
            };
            let rows = run_sweep(&spec, common.threads)?;
            emit(common.out.as_deref(), |w| write_sweep(w, &spec, &rows, &common.csv(vec![])))?;
        }
        Command::Figure { id, common } => {
            if id == "list" {
                let mut w = io::stdout().lock();
                for id in PRESET_IDS {
                    if writeln!(w, "{id}: {}", preset(id)?.description).is_err() {
                        break;
                    }
                }
                return Ok(());
            }
            let fp = preset(&id)?;
            let base = fp.spec()?;
            let spec = SweepSpec {
                config: common.config(base.config)?,
                axes: base.axes,
                pairs: match &common.pairs {
                    Some(_) => common.pairs()?,
                    None => base.pairs,
                },
            };
            let rows = run_sweep(&spec, common.threads)?;
            let extra = vec![format!("preset = {id}"), format!("description = {}", fp.description)];
            emit(common.out.as_deref(), |w| write_sweep(w, &spec, &rows, &common.csv(extra)))?;
        }
        Command::StabilityMap { common, axes } => {
            let spec = SweepSpec {
                config: common.config(Config::baseline())?,
                axes: axes.axes()?,
                pairs: common.pairs()?,
            };
            let rows = stability_map(&spec, common.threads)?;
            emit(common.out.as_deref(), |w| write_stability_map(w, &spec, &rows, &common.csv(vec![])))?;
        }
        Command::Validate { common } => {
            let mut config = common.config(Config::baseline())?;
            kerr_note(&config);
            // the checks do not depend on the dynamics
            config.stability = StabilityPolicy::Formal;
            let r = run_point(&config, &[])?;
            print_validity(&r.validity);
            println!("linearisation {}", if r.validity.passed() { "valid" } else { "NOT valid" });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ SweepError::NotStable { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
