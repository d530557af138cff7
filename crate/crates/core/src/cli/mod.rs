//! The `relhydrogen` command line: every computation as a reproducible run
//! writing CSV or JSON.
//!
//! Exit codes: 0 ok, 1 failed verification or numerical failure, 2 usage
//! or validation error, 3 IO error.

mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::phasespace::{DensityKind, StateDensity};
use crate::spectrum::Coupling;
use output::Table;

pub use verify::{run_checks, Check};

#[derive(Debug, Parser)]
#[command(name = "relhydrogen", version, about = "Classical phase-space densities of relativistic hydrogen")]
pub struct Cli {
    /// Coupling alpha*Z.
    #[arg(long, global = true, default_value_t = 0.2)]
    pub alpha_z: f64,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance override (quadrature, integrator, or verification checks).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateName {
    Yrast,
    #[value(name = "2s-a")]
    TwoSA,
    #[value(name = "2s-b")]
    TwoSB,
    #[value(name = "2s-mix")]
    TwoSMix,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, value_enum, default_value_t = StateName::Yrast)]
    pub state: StateName,
    /// Principal number of a Yrast state.
    #[arg(long)]
    pub n: Option<u32>,
    /// Mixing parameter of `2s-mix`.
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RadialGrid {
    #[arg(long, default_value_t = 20.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Levels E_nl with their a^4 series and effective angular momenta.
    Spectrum {
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Radial wavefunction against the phase-space momentum marginal.
    Wavefn {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: RadialGrid,
    },
    /// Chart density at fixed R and mu, or a global negativity scan.
    Density {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 4.0)]
        scale: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        mu: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Minimum of the angle-integrated density instead of a slice.
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Momentum marginal on a radial grid, optionally by brute-force quadrature.
    Marginal {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: RadialGrid,
        #[arg(long)]
        quadrature: bool,
    },
    /// Expectation values and energy functionals.
    Expect {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Run the identity suite; exit 1 if any check fails.
    Verify,
    /// Exact samples of a Yrast density.
    Sample {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Monte Carlo averages against closed forms instead of the points.
        #[arg(long)]
        summary: bool,
    },
    /// Integrate a trajectory from (radius, 0, 0) with momentum (pr, pt, 0).
    Orbit {
        #[arg(long, default_value_t = 1.5)]
        radius: f64,
        #[arg(long, default_value_t = 0.2)]
        pr: f64,
        #[arg(long, default_value_t = 0.6)]
        pt: f64,
        /// Length in radial periods.
        #[arg(long, default_value_t = 10.0)]
        periods: f64,
    },
    /// Wigner and classical ground-state momentum marginals.
    Figure {
        #[arg(long, default_value_t = 5.0)]
        p_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

/// Validated global settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub coupling: Coupling,
    pub seed: u64,
    pub tol: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::MaxSubdivisions { .. }
            | Error::Collision { .. }
            | Error::ToleranceFailure { .. }
            | Error::EmptyBatch => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let coupling = Coupling::new(cli.alpha_z)?;
        if let Some(t) = cli.tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {t}")));
            }
        }
        if cli.workers == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        Ok(Self {
            coupling,
            seed: cli.seed,
            tol: cli.tol,
            output: cli.output.clone(),
            format: cli.format,
            workers: cli.workers,
        })
    }
}

impl StateArgs {
    pub fn density(&self, coupling: Coupling) -> Result<StateDensity, CliError> {
        let kind = match self.state {
            StateName::Yrast => {
                if self.lambda.is_some() {
                    return Err(CliError::Usage("--lambda applies only to --state 2s-mix".into()));
                }
                DensityKind::Yrast(self.n.unwrap_or(1))
            }
            other => {
                if self.n.is_some() {
                    return Err(CliError::Usage("--n applies only to --state yrast".into()));
                }
                match other {
                    StateName::TwoSA if self.lambda.is_none() => DensityKind::TwoSA,
                    StateName::TwoSB if self.lambda.is_none() => DensityKind::TwoSB,
                    StateName::TwoSMix => DensityKind::TwoSMix(self.lambda.unwrap_or(0.0)),
                    _ => return Err(CliError::Usage("--lambda applies only to --state 2s-mix".into())),
                }
            }
        };
        Ok(StateDensity::new(kind, coupling)?)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let (table, code) = match &cli.command {
        Command::Verify => {
            let checks = run_checks(&cfg);
            let code = if checks.iter().all(|c| c.pass) { 0 } else { 1 };
            (verify::table(&checks), code)
        }
        other => (commands::dispatch(other, &cfg)?, 0),
    };
    emit(&table, &cfg)?;
    Ok(code)
}

fn emit(table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    match write_table(table, cfg) {
        // a closed pipe (e.g. `| head`) just ends the output
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn write_table(table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    let write = |out: &mut dyn Write| -> io::Result<()> {
        match cfg.format {
            Format::Csv => table.write_csv(out),
            Format::Json => table.write_json(out),
        }
    };
    match &cfg.output {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}
