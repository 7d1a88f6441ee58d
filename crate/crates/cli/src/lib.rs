//! Command-line front end for the nonstatic light-wave phase library.
//!
//! Subcommands: `phases` (trajectory CSV), `figure` (preset reproduction
//! into CSV + SVG), `sweep` (parameter-grid CSV), `verify` (oracle suite
//! with a machine-readable report). Exit codes: 0 success, 1 verification
//! failure, 2 usage or configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod manifest;
pub mod output;
pub mod presets;
pub mod svg;

use wavephase::config::{ConfigMap, Resolved};

/// Environment variable providing the default output directory.
pub const OUT_ENV: &str = "WAVEPHASE_OUT";

#[derive(Debug, Parser)]
#[command(name = "wavephase", version, about = "Phases of nonstatic light waves in a static medium")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Configuration file (`key = value` lines, `#` comments).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Override a config key, e.g. `--set c1=2.5`. Repeatable; applied
    /// after the file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Output directory (default: $WAVEPHASE_OUT, else ./out).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for parallel evaluation (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the coherent-state phases over a time interval into CSV.
    Phases {
        /// Start time (default: t0 from the configuration).
        #[arg(long)]
        t_start: Option<f64>,
        /// End time (default: t0 + three periods).
        #[arg(long)]
        t_end: Option<f64>,
        /// Number of sample points (>= 2), endpoints included.
        #[arg(long, default_value_t = 601)]
        steps: usize,
    },
    /// Reproduce a figure preset (one CSV and one SVG per panel).
    Figure {
        /// Preset identifier, `fig1` .. `fig11`.
        preset: String,
        /// TOML file whose presets replace the built-in ones by id.
        #[arg(long, value_name = "PATH")]
        presets_file: Option<PathBuf>,
    },
    /// Evaluate phase quantities over a parameter grid.
    Sweep {
        /// Grid axis, `AXIS=START:STOP:COUNT` or `AXIS=VALUE`, with AXIS
        /// one of c1, c2, phi, theta, a0, omega. Repeatable.
        #[arg(long = "grid", value_name = "AXIS=SPEC")]
        grid: Vec<String>,
    },
    /// Run the verification suite and write a machine-readable report.
    Verify {
        /// `config` verifies the resolved configuration; `random` draws
        /// one from --seed.
        #[arg(default_value = "config")]
        source: String,
    },
}

/// Top-level error covering usage problems and verification failures.
#[derive(Debug)]
pub enum CliError {
    /// Usage or configuration problems; exit code 2.
    Usage(String),
    /// One or more verification checks failed; exit code 1.
    VerificationFailed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::VerificationFailed(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<wavephase::Error> for CliError {
    fn from(e: wavephase::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parse arguments and run; returns the process exit code.
pub fn run(args: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version print and exit 0; real parse errors exit 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_thread_pool(cli.jobs);
    match dispatch(&cli, &args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn init_thread_pool(jobs: usize) {
    if jobs > 0 {
        // Ignore the error if a pool is already installed.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn init_thread_pool(_jobs: usize) {}

fn dispatch(cli: &Cli, argv: &[String]) -> CliResult<()> {
    let out_dir = resolve_out_dir(cli);
    match &cli.command {
        Command::Phases { t_start, t_end, steps } => {
            let resolved = load_config(cli)?;
            commands::phases::run(&resolved, *t_start, *t_end, *steps, &out_dir, argv)
        }
        Command::Figure { preset, presets_file } => {
            let set = match presets_file {
                Some(path) => presets::PresetSet::with_override(path)
                    .map_err(|e| CliError::Usage(e.to_string()))?,
                None => presets::PresetSet::embedded(),
            };
            commands::figure::run(preset, &set, &out_dir, argv)
        }
        Command::Sweep { grid } => {
            let resolved = load_config(cli)?;
            commands::sweep::run(&resolved, grid, &out_dir, argv)
        }
        Command::Verify { source } => {
            let resolved = match source.as_str() {
                "config" => load_config(cli)?,
                "random" => commands::verify::random_config(cli.seed),
                other => {
                    return Err(CliError::Usage(format!(
                        "verify source must be `config` or `random`, got `{other}`"
                    )))
                }
            };
            commands::verify::run(&resolved, &out_dir, argv)
        }
    }
}

fn resolve_out_dir(cli: &Cli) -> PathBuf {
    if let Some(out) = &cli.out {
        return out.clone();
    }
    if let Ok(env_dir) = std::env::var(OUT_ENV) {
        if !env_dir.is_empty() {
            return PathBuf::from(env_dir);
        }
    }
    PathBuf::from("out")
}

/// Load the config file (if any), apply `--set` overrides, resolve, and
/// surface warnings on stderr.
pub fn load_config(cli: &Cli) -> CliResult<Resolved> {
    let mut map = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            ConfigMap::parse(&text)?
        }
        None => ConfigMap::default(),
    };
    map.apply_overrides(cli.set.iter().map(String::as_str))?;
    let resolved = map.resolve()?;
    for w in &resolved.warnings {
        eprintln!("warning: {w}");
    }
    Ok(resolved)
}
