//! Command-line driver for the rotorlab experiments.
//!
//! Each subcommand resolves a [`RunConfig`] from experiment defaults, an
//! optional `key = value` file and flag overrides, in that order, then writes
//! `<out>/<experiment>.csv` and a matching `.meta` file.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Experiment, Period, RunConfig};
pub use error::{CliError, Result};
pub use output::{Artifact, Meta, Table};

#[derive(Debug, Parser)]
#[command(name = "rotorlab", version, about = "Fidelity experiments for nearly resonant kicked rotors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Resonant rotor: numeric fidelity and the harmonic resonant formula.
    Figure1,
    /// Narrow quasi-momentum ensemble about the resonance.
    Figure2a,
    /// Ensemble over the whole Brillouin zone.
    Figure2b,
    /// Numeric fidelity at tau = 2 pi ell against the Bessel law.
    ExactResonance,
    /// Pseudo-classical phase portrait around the resonance island.
    MapPortrait,
    /// Beating period and revival peaks over a list of detunings.
    Sweep,
}

impl Command {
    pub fn experiment(self) -> Experiment {
        match self {
            Self::Figure1 => Experiment::Figure1,
            Self::Figure2a => Experiment::Figure2a,
            Self::Figure2b => Experiment::Figure2b,
            Self::ExactResonance => Experiment::ExactResonance,
            Self::MapPortrait => Experiment::MapPortrait,
            Self::Sweep => Experiment::Sweep,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub t_max: Option<u32>,
    #[arg(long, global = true, value_name = "N")]
    pub n_max: Option<usize>,
    /// Worker threads, 0 = one per core.
    #[arg(long, global = true, value_name = "N", env = "ROTORLAB_THREADS")]
    pub threads: Option<usize>,
    /// Gaussian smoothing width in kicks.
    #[arg(long, global = true, value_name = "S")]
    pub sigma: Option<f64>,
}

/// Defaults, then the config file, then flags.
pub fn resolve(experiment: Experiment, flags: &Flags) -> Result<RunConfig> {
    let mut c = RunConfig::defaults(experiment);
    if let Some(path) = &flags.config {
        c.apply_file(path)?;
    }
    if let Some(out) = &flags.out {
        c.output = out.clone();
    }
    if let Some(t) = flags.t_max {
        c.t_max = t;
    }
    if let Some(n) = flags.n_max {
        c.n_max = n;
    }
    if let Some(n) = flags.threads {
        c.threads = n;
    }
    if let Some(s) = flags.sigma {
        c.sigma = s;
    }
    c.validate()?;
    Ok(c)
}

/// Runs on a dedicated pool of `config.threads` workers.
pub fn execute(config: &RunConfig) -> Result<Artifact> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    pool.install(|| experiments::run(config))
}

/// Resolves, runs and writes; returns the CSV path.
pub fn run_cli(cli: &Cli) -> Result<PathBuf> {
    let config = resolve(cli.command.experiment(), &cli.flags)?;
    let artifact = execute(&config)?;
    artifact.write(&config.output)
}
