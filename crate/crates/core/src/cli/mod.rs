//! Command-line front end: figure sweeps, randomized verification and
//! shot-noise runs.
//!
//! Settings come from a flat `key = value` file (`--config`), then `--set`
//! overrides, then the dedicated flags. Exit codes: 0 success, 1 usage or
//! configuration error, 2 model-domain error, 3 violation found by `verify`.

pub mod config;
pub mod output;
pub mod presets;
pub mod scenario;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Format, Grid, RawConfig};
pub use output::{Table, Value};
pub use presets::{preset, Preset, PRESET_NAMES};
pub use scenario::{Scenario, SweepConfig};
pub use verify::{run_verify, sample_instance, VerifyConfig, VerifySummary, Violation};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MODEL: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(Error),
    #[error("{0} verification violation(s) found")]
    Violation(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Model(_) => EXIT_MODEL,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "errdist", version, about = "Error-disturbance trade-off sweeps and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a scenario over a parameter grid.
    Sweep(Common),
    /// Randomized check on generic indirect measurements (keys: dim, trials).
    Verify(Common),
    /// Simulate photon counts and estimate the trade-off with error bars.
    Shots(Common),
    /// Run a named figure sweep.
    Preset {
        /// One of: fig1 fig2 fig3 fig3-imperfect fig3-shots fig4 figS1 figS2 figS5 figS6 figS7.
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: available cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Override one key, e.g. `--set theta=0:27:4`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Common {
    /// `base`, then the config file, then `--set`, then the dedicated flags.
    fn resolve(&self, base: RawConfig) -> Result<RawConfig, CliError> {
        let mut raw = base;
        if let Some(path) = &self.config {
            raw.merge(&RawConfig::load(path)?);
        }
        for s in &self.set {
            raw.set_flag(s)?;
        }
        if let Some(out) = &self.out {
            raw.set("out", &out.to_string_lossy());
        }
        if let Some(seed) = self.seed {
            raw.set("seed", &seed.to_string());
        }
        if let Some(format) = self.format {
            raw.set("format", if format == Format::Csv { "csv" } else { "jsonl" });
        }
        if let Some(jobs) = self.jobs {
            raw.set("jobs", &jobs.to_string());
        }
        Ok(raw)
    }
}

/// Parses `args` (including the program name) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sweep(common) => dispatch(vec![common.resolve(RawConfig::new())?]),
        Command::Verify(common) => dispatch(vec![forced(&common, "verify")?]),
        Command::Shots(common) => dispatch(vec![forced(&common, "shots")?]),
        Command::Preset { name, common } => {
            let p = preset(&name)
                .ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`; available: {}", PRESET_NAMES.join(" "))))?;
            let configs = p.configs.into_iter().map(|c| common.resolve(c)).collect::<Result<_, _>>()?;
            dispatch(configs)
        }
    }
}

fn forced(common: &Common, scenario: &str) -> Result<RawConfig, CliError> {
    let mut raw = common.resolve(RawConfig::new())?;
    if let Some(other) = raw.get("scenario").filter(|s| *s != scenario) {
        return Err(CliError::Usage(format!("`{scenario}` subcommand given scenario = {other}")));
    }
    raw.set("scenario", scenario);
    Ok(raw)
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn dispatch(raws: Vec<RawConfig>) -> Result<(), CliError> {
    let configs = raws.iter().map(SweepConfig::from_raw).collect::<Result<Vec<_>, _>>()?;
    let first = configs.first().expect("at least one config");
    let pool = thread_pool(first.jobs)?;
    if first.scenario == Scenario::Verify {
        return pool.install(|| verify_command(first));
    }
    let table = pool.install(|| -> Result<Table, CliError> {
        let mut table = Table::default();
        for cfg in &configs {
            let part = cfg.run()?;
            if table.header.is_empty() {
                table.header = part.header;
            } else if table.header != part.header {
                return Err(CliError::Usage("preset sweeps produce different columns".into()));
            }
            table.rows.extend(part.rows);
        }
        Ok(table)
    })?;
    write_table(&table, first)
}

fn verify_config(cfg: &SweepConfig) -> Result<VerifyConfig, CliError> {
    let get = |key: &str, default: usize| -> Result<usize, CliError> {
        cfg.raw()
            .get(key)
            .map_or(Ok(default), |s| s.parse().map_err(|_| CliError::Usage(format!("`{key}`: expected an integer"))))
    };
    let v = VerifyConfig {
        dim: get("dim", 2)?,
        trials: get("trials", 1000)?,
        seed: cfg.seed,
    };
    v.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(v)
}

fn verify_command(cfg: &SweepConfig) -> Result<(), CliError> {
    let vcfg = verify_config(cfg)?;
    let summary = run_verify(&vcfg)?;
    write_table(&summary.table(), cfg)?;
    for v in &summary.violations {
        eprintln!("violation: {} = {:.3e} (instance seed {})\n{}", v.what, v.value, v.seed, v.instance);
    }
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::Violation(summary.violations.len()))
    }
}

fn write_table(table: &Table, cfg: &SweepConfig) -> Result<(), CliError> {
    let result = match &cfg.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write(&mut w, cfg.format).and_then(|_| w.flush())
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            table.write(&mut w, cfg.format).and_then(|_| w.flush())
        }
    };
    match result {
        // A closed downstream pipe (`| head`) is not a failure of ours.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(|e| CliError::Usage(format!("write failed: {e}"))),
    }
}
