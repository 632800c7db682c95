use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qscissors_cli::{
    catalogue, emit, output_path, run_figure, run_preset, split_values, sweep, CliError, CliResult, ExperimentConfig,
    Format,
};

/// Truncated Fock-space experiments: linear and nonlinear quantum scissors.
///
/// Preset parameters are given as `--key value` (or `--key=value`) after the
/// preset name; `qscissors list` shows every key with its default. Complex
/// values are written `(re,im)`, lists are `;`-separated.
#[derive(Parser)]
#[command(name = "qscissors", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List presets with their parameters, and figure ids.
    List,
    /// Run a preset once.
    Run {
        preset: String,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run a preset once per value of one parameter.
    Sweep {
        preset: String,
        /// Parameter to vary.
        #[arg(long)]
        axis: String,
        /// Comma-separated values, e.g. `0,0.002,0.01`.
        #[arg(long)]
        values: String,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Emit the data behind a figure.
    Figure {
        id: String,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct IoArgs {
    /// Flat TOML file of parameters; command-line overrides win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; defaults to stdout or the output directory.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Directory for `<name>.<ext>` when `--out` is not given.
    #[arg(long, env = "QSCISSORS_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Parameter overrides `--key value ...`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "OVERRIDES")]
    overrides: Vec<String>,
}

impl IoArgs {
    /// Pulls `--out`, `--config`, `--format` and `--out-dir` out of the
    /// override list, where they land when written after a preset parameter.
    fn take_reserved(&mut self) -> CliResult<()> {
        let mut rest = Vec::new();
        let mut it = std::mem::take(&mut self.overrides).into_iter();
        while let Some(a) = it.next() {
            let (flag, inline) = match a.split_once('=') {
                Some((f, v)) => (f.to_string(), Some(v.to_string())),
                None => (a.clone(), None),
            };
            if !matches!(flag.as_str(), "--out" | "-o" | "--config" | "--format" | "--out-dir") {
                rest.push(a);
                continue;
            }
            let value = match inline {
                Some(v) => v,
                None => it.next().ok_or_else(|| CliError::config(format!("missing value for `{flag}`")))?,
            };
            match flag.as_str() {
                "--out" | "-o" => self.out = Some(value.into()),
                "--config" => self.config = Some(value.into()),
                "--out-dir" => self.out_dir = Some(value.into()),
                _ => {
                    self.format = FormatArg::from_str(&value, true)
                        .map_err(|_| CliError::config(format!("unknown format `{value}`")))?
                }
            }
        }
        self.overrides = rest;
        Ok(())
    }

    fn config(&mut self) -> CliResult<ExperimentConfig> {
        self.take_reserved()?;
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::from_file(p)?,
            None => ExperimentConfig::default(),
        };
        cfg.apply_overrides(&self.overrides)?;
        if self.out.is_none() {
            self.out = cfg.output.clone();
        }
        Ok(cfg)
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }

    fn emit(&self, table: &qscissors_cli::ResultTable, stem: &str) -> CliResult<()> {
        let path = output_path(self.out.as_deref(), self.out_dir.as_deref(), stem, self.format());
        emit(table, path.as_deref(), self.format())
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::List => {
            print!("{}", catalogue());
            Ok(())
        }
        Command::Run { preset, mut io } => {
            let cfg = io.config()?;
            let preset = cfg.preset.clone().filter(|_| preset == "-").unwrap_or(preset);
            let table = run_preset(&preset, &cfg)?;
            io.emit(&table, &preset)
        }
        Command::Sweep {
            preset,
            axis,
            values,
            mut io,
        } => {
            let cfg = io.config()?;
            let table = sweep(&preset, &cfg, &axis, &split_values(&values))?;
            io.emit(&table, &format!("{preset}_sweep_{}", axis.replace('-', "_")))
        }
        Command::Figure { id, mut io } => {
            let cfg = io.config()?;
            let table = run_figure(&id, &cfg)?;
            io.emit(&table, &id)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qscissors: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
