use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use surrogate_paradox::cli::{self, AnalysisConfig, CommandOutput, ExitStatus, Format, SimulateConfig, WorldKind};
use surrogate_paradox::inference::{BootstrapConfig, DEFAULT_LEVEL, DEFAULT_REPLICATES};
use surrogate_paradox::Mode;

/// Bounds on the individual surrogate paradox from randomised trial data.
///
/// Exit status: 0 paradox excluded or undetermined, 1 paradox present,
/// 2 incompatible data / verification mismatch / failed fixture, 64 usage or input error.
#[derive(Parser)]
#[command(name = "surrogate-paradox", version)]
struct Cli {
    /// Worker threads for bootstrap and simulation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sharp bounds on HR(T→Y) at one c1.
    Bounds(Analysis),
    /// Bound curves over a c1 grid, with bootstrap bands when --boot is given.
    Curve(Analysis),
    /// Paradox verdicts and the observable surrogate criteria.
    Criteria(Analysis),
    /// Check closed-form bounds against the linear program.
    Verify(Analysis),
    /// Percentile bootstrap region for the bounds.
    Bootstrap(Analysis),
    /// Replay the built-in example worlds.
    Examples {
        /// Fixture name; all fixtures when omitted.
        name: Option<String>,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Generate a random potential-outcome world, or a trial drawn from one.
    Simulate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "binary")]
        kind: WorldKind,
        /// Dirichlet concentration of the cell probabilities.
        #[arg(long, default_value_t = 1.0)]
        concentration: f64,
        /// Emit counts for a trial with this many units per arm.
        #[arg(long)]
        units: Option<u64>,
        #[arg(long)]
        format: Option<Format>,
    },
}

#[derive(Args)]
struct Analysis {
    /// Counts (t,y,s,count) or probabilities (t,y,s,p), CSV or JSON; `-` for stdin.
    input: PathBuf,
    #[arg(long, default_value = "0")]
    c1: String,
    #[arg(long, default_value = "0")]
    c2: String,
    /// Causal-necessity slack; enables the refined upper bound.
    #[arg(long)]
    c3: Option<String>,
    /// c1 grid as a:b:step.
    #[arg(long)]
    grid: Option<String>,
    /// Bootstrap replicates.
    #[arg(long)]
    boot: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    level: f64,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    format: Option<Format>,
}

impl Analysis {
    fn config(self, bootstrap_by_default: bool) -> AnalysisConfig {
        let bootstrap = (self.boot.is_some() || bootstrap_by_default).then(|| BootstrapConfig {
            replicates: self.boot.unwrap_or(DEFAULT_REPLICATES),
            seed: self.seed,
            level: self.level,
        });
        AnalysisConfig {
            input: Some(self.input),
            c1: self.c1,
            c2: self.c2,
            c3: self.c3,
            grid: self.grid,
            bootstrap,
            mode: self.mode,
            format: self.format,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<CommandOutput> {
    if let Some(n) = cli.threads {
        anyhow::ensure!(n > 0, "--threads must be positive");
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let out = match cli.command {
        Command::Bounds(a) => cli::cmd_bounds(&a.config(false))?,
        Command::Curve(a) => cli::cmd_curve(&a.config(false))?,
        Command::Criteria(a) => cli::cmd_criteria(&a.config(false))?,
        Command::Verify(a) => cli::cmd_verify(&a.config(false))?,
        Command::Bootstrap(a) => cli::cmd_bootstrap(&a.config(true))?,
        Command::Examples { name, format } => cli::cmd_examples(name.as_deref(), format)?,
        Command::Simulate {
            seed,
            kind,
            concentration,
            units,
            format,
        } => cli::cmd_simulate(&SimulateConfig {
            kind,
            seed,
            concentration,
            units,
            format,
        })?,
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::Usage.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(ExitStatus::Usage.code());
            }
            ExitCode::from(out.exit.code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ExitStatus::Usage.code())
        }
    }
}
