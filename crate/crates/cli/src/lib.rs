//! Command-line runner: presets, figure data, sweeps and table output.

pub mod config;
pub mod error;
pub mod figures;
pub mod presets;
pub mod table;

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{ExperimentConfig, Kind, ParamSpec, Params, Value};
pub use error::{CliError, CliResult};
pub use table::{Format, ResultTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn stamp(table: &mut ResultTable, preset: &str, params: &Params) {
    table.meta("preset", preset);
    table.meta("version", VERSION);
    for (k, v) in params.iter() {
        table.meta(&format!("param.{k}"), v);
    }
}

/// Runs a preset with validated parameters; the table carries the preset,
/// version and every resolved parameter.
pub fn run_preset(name: &str, cfg: &ExperimentConfig) -> CliResult<ResultTable> {
    let preset = presets::find(name)?;
    let params = cfg.resolve(preset.params)?;
    let mut table = (preset.run)(&params)?;
    stamp(&mut table, preset.name, &params);
    Ok(table)
}

pub fn run_figure(id: &str, cfg: &ExperimentConfig) -> CliResult<ResultTable> {
    let fig = figures::find(id)?;
    let mut merged = cfg.clone();
    for (k, v) in fig.defaults {
        merged.params.entry(k.to_string()).or_insert_with(|| v.to_string());
    }
    let table = run_preset(fig.preset, &merged)?;
    let mut out = if fig.columns.is_empty() { table } else { table.select(fig.columns)? };
    out.meta("figure", fig.id);
    Ok(out)
}

/// Splits `a,b,(re,im)` on commas outside parentheses.
pub fn split_values(raw: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in raw.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Runs `name` once per value of `axis` (points in parallel) and stacks the
/// tables in input order behind a leading axis column.
pub fn sweep(name: &str, cfg: &ExperimentConfig, axis: &str, values: &[String]) -> CliResult<ResultTable> {
    let preset = presets::find(name)?;
    let axis = config::normalize_key(axis);
    let spec = preset
        .params
        .iter()
        .find(|s| s.key == axis)
        .ok_or_else(|| CliError::config(format!("preset `{name}` has no parameter `{axis}`")))?;
    if values.is_empty() {
        return Err(CliError::config("sweep needs at least one value"));
    }
    let numeric = values
        .iter()
        .map(|v| match config::parse_value(spec, v)? {
            Value::Real(x) => Ok(x),
            Value::Int(n) => Ok(n as f64),
            Value::Complex(z) if z.im == 0.0 => Ok(z.re),
            _ => Err(CliError::config(format!("sweep axis `{axis}` must take real or integer values"))),
        })
        .collect::<CliResult<Vec<f64>>>()?;

    let tables = values
        .par_iter()
        .map(|v| {
            let mut c = cfg.clone();
            c.params.insert(axis.clone(), v.clone());
            let params = c.resolve(preset.params)?;
            (preset.run)(&params).map(|t| (t, params))
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut cols = vec![axis.clone()];
    cols.extend(tables[0].0.columns.iter().cloned());
    let mut out = ResultTable::new(cols);
    for (k, ((t, _), x)) in tables.iter().zip(&numeric).enumerate() {
        if t.columns != tables[0].0.columns {
            return Err(CliError::config(format!("sweep point {k} changes the table columns")));
        }
        for row in &t.rows {
            let mut r = vec![*x];
            r.extend(row);
            out.push(r)?;
        }
        for (mk, mv) in &t.metadata {
            out.meta(&format!("point{k}.{mk}"), mv);
        }
    }
    stamp(&mut out, preset.name, &tables[0].1);
    out.metadata.remove(&format!("param.{axis}"));
    out.meta("sweep.axis", &axis);
    out.meta("sweep.values", values.join(","));
    Ok(out)
}

/// Where output goes: an explicit path, else `<dir>/<stem>.<ext>` when a
/// default directory is set, else stdout (`None`).
pub fn output_path(explicit: Option<&Path>, dir: Option<&Path>, stem: &str, format: Format) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| dir.map(|d| d.join(format!("{stem}.{}", format.extension()))))
}

pub fn emit(table: &ResultTable, path: Option<&Path>, format: Format) -> CliResult<()> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            let mut buf = Vec::new();
            table.write(&mut buf, format)?;
            std::fs::write(p, buf)?;
            log::info!("wrote {}", p.display());
            Ok(())
        }
        None => {
            let mut buf = Vec::new();
            table.write(&mut buf, format)?;
            match std::io::stdout().lock().write_all(&buf) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(Into::into),
            }
        }
    }
}

/// Human-readable catalogue for `list`.
pub fn catalogue() -> String {
    let mut s = String::from("presets:\n");
    for p in presets::PRESETS {
        s.push_str(&format!("  {:<20} {}\n", p.name, p.about));
        for spec in p.params {
            s.push_str(&format!("      --{:<22} [{}] {}\n", spec.key.replace('_', "-"), spec.default, spec.help));
        }
    }
    s.push_str("figures:\n");
    for f in figures::FIGURES {
        s.push_str(&format!("  {:<20} {} (preset {})\n", f.id, f.about, f.preset));
    }
    s
}
