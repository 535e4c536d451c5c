//! CSV output: `# `-prefixed metadata lines, one header line, then rows.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::measures::{MeasureReport, ModePair};

use super::{Config, PointResult, Result, Scale, StabilityRow, SweepRow, SweepSpec};

#[derive(Debug, Clone, Default)]
pub struct CsvOptions {
    /// Emit a `# generated_unix = ...` line. Everything else in the file is
    /// a deterministic function of the inputs.
    pub timestamp: bool,
    /// Extra metadata lines (without the leading `# `).
    pub extra: Vec<String>,
}

fn measure_columns(pairs: &[ModePair]) -> Vec<String> {
    let mut h: Vec<String> = pairs.iter().map(|p| format!("EN_{}", p.key())).collect();
    for p in pairs {
        let (a, b) = (p.a().label(), p.b().label());
        h.push(format!("S_{a}_to_{b}"));
        h.push(format!("S_{b}_to_{a}"));
    }
    h.extend(pairs.iter().map(|p| format!("SN_{}", p.key())));
    h
}

fn measure_fields(measures: &[MeasureReport]) -> Vec<String> {
    let mut f: Vec<String> = measures.iter().map(|m| num(m.log_negativity)).collect();
    for m in measures {
        f.push(num(m.steering.a_to_b));
        f.push(num(m.steering.b_to_a));
    }
    f.extend(measures.iter().map(|m| num(m.steering.asymmetry)));
    f
}

/// Shortest round-trip formatting; `NaN` for missing values.
fn num(x: f64) -> String {
    format!("{x}")
}

fn flag(x: Option<bool>) -> String {
    match x {
        Some(true) => "1".into(),
        Some(false) => "0".into(),
        None => "NaN".into(),
    }
}

pub fn sweep_header(spec: &SweepSpec) -> Vec<String> {
    let mut h: Vec<String> = spec.axes.iter().map(|a| a.key.clone()).collect();
    h.extend(measure_columns(&spec.pairs));
    h.push("stable".into());
    h.push("physical".into());
    h
}

pub fn point_header(pairs: &[ModePair]) -> Vec<String> {
    let mut h = measure_columns(pairs);
    h.extend(["stable", "physical", "spectral_abscissa_hz"].map(String::from));
    h
}

fn write_metadata<W: Write>(out: &mut W, kind: &str, config: &Config, opts: &CsvOptions) -> Result<()> {
    writeln!(out, "# omm {kind}")?;
    if opts.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        writeln!(out, "# generated_unix = {secs}")?;
    }
    for line in config.metadata() {
        writeln!(out, "# {line}")?;
    }
    for line in &opts.extra {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

fn write_axes<W: Write>(out: &mut W, spec: &SweepSpec) -> Result<()> {
    for a in &spec.axes {
        let scale = match a.scale {
            Scale::Linear => "linear",
            Scale::Log => "log",
        };
        writeln!(
            out,
            "# axis = {} from {} to {} ({} points, {scale})",
            a.key, a.start, a.stop, a.points
        )?;
    }
    let pairs: Vec<String> = spec.pairs.iter().map(|p| p.to_string()).collect();
    writeln!(out, "# pairs = {}", pairs.join(","))?;
    Ok(())
}

fn records<W: Write>(out: &mut W, header: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let map = |e: csv::Error| super::SweepError::Io {
        path: "<csv>".into(),
        message: e.to_string(),
    };
    w.write_record(&header).map_err(map)?;
    for r in rows {
        w.write_record(&r).map_err(map)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep<W: Write>(mut out: W, spec: &SweepSpec, rows: &[SweepRow], opts: &CsvOptions) -> Result<()> {
    write_metadata(&mut out, "sweep", &spec.config, opts)?;
    write_axes(&mut out, spec)?;
    let body = rows.iter().map(|r| {
        let mut f: Vec<String> = r.coords.iter().map(|&x| num(x)).collect();
        f.extend(measure_fields(&r.measures));
        f.push(flag(r.stable));
        f.push(flag(Some(r.physical)));
        f
    });
    records(&mut out, sweep_header(spec), body)
}

pub fn write_stability_map<W: Write>(
    mut out: W,
    spec: &SweepSpec,
    rows: &[StabilityRow],
    opts: &CsvOptions,
) -> Result<()> {
    write_metadata(&mut out, "stability-map", &spec.config, opts)?;
    write_axes(&mut out, spec)?;
    let mut header: Vec<String> = spec.axes.iter().map(|a| a.key.clone()).collect();
    header.push("spectral_abscissa_hz".into());
    header.push("stable".into());
    let body = rows.iter().map(|r| {
        let mut f: Vec<String> = r.coords.iter().map(|&x| num(x)).collect();
        f.push(num(r.spectral_abscissa / (2.0 * PI)));
        f.push(flag(r.stable));
        f
    });
    records(&mut out, header, body)
}

pub fn write_point<W: Write>(
    mut out: W,
    config: &Config,
    result: &PointResult,
    pairs: &[ModePair],
    opts: &CsvOptions,
) -> Result<()> {
    write_metadata(&mut out, "point", config, opts)?;
    let mut row = measure_fields(&result.measures);
    row.push(flag(Some(result.stable)));
    row.push(flag(Some(result.physical)));
    row.push(num(result.spectral_abscissa / (2.0 * PI)));
    records(&mut out, point_header(pairs), std::iter::once(row))
}
