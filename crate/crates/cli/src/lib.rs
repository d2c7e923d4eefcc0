//! Command-line front end for the `cstar_info` experiments.
//!
//! Every invocation resolves to an [`ExperimentConfig`]; the emitted artifact
//! embeds that resolved config, so re-running it reproduces the same bytes.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod notation;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use cstar_info::Guard;

pub use config::{CommandName, ExperimentConfig, Format, Params};
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "cstar-info", version, about = "Experiments on abelian C*-algebra information theory")]
pub struct Cli {
    /// Experiment config (.toml or .json) instead of a subcommand
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the artifact here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for stochastic commands (default 0)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Raise or lower the enumeration limit, in bits (default 24)
    #[arg(long, global = true)]
    pub guard_override: Option<f64>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Lln(config::LlnParams),
    Aep(config::AepParams),
    Code(config::CodeParams),
    ChannelInfo(config::ChannelInfoParams),
    Capacity(config::CapacityParams),
    CodingExperiment(config::CodingParams),
}

impl Command {
    fn into_params(self) -> Params {
        match self {
            Self::Lln(p) => Params::Lln(p),
            Self::Aep(p) => Params::Aep(p),
            Self::Code(p) => Params::Code(p),
            Self::ChannelInfo(p) => Params::ChannelInfo(p),
            Self::Capacity(p) => Params::Capacity(p),
            Self::CodingExperiment(p) => Params::CodingExperiment(p),
        }
    }
}

impl Cli {
    /// Merges the config file (if any) with command-line flags; flags win.
    pub fn into_config(self) -> Result<ExperimentConfig> {
        let mut cfg = match (self.config, self.command) {
            (Some(path), None) => ExperimentConfig::load(&path)?,
            (None, Some(cmd)) => {
                let params = cmd.into_params();
                ExperimentConfig {
                    command: params.command(),
                    params: params.to_value(),
                    seed: 0,
                    output_path: None,
                    format: Format::Json,
                    guard_override: None,
                }
            }
            (Some(_), Some(_)) => {
                return Err(CliError::config("give either a subcommand or --config, not both"))
            }
            (None, None) => return Err(CliError::config("no subcommand or --config given")),
        };
        if let Some(o) = self.output {
            cfg.output_path = Some(o);
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(g) = self.guard_override {
            cfg.guard_override = Some(g);
        }
        cfg.resolved()
    }
}

/// Runs a config and returns the rendered artifact.
pub fn run(config: &ExperimentConfig) -> Result<String> {
    let config = config.resolved()?;
    let guard = match config.guard_override {
        Some(bits) if bits.is_nan() || bits < 0.0 => {
            return Err(CliError::config("guard_override must be a nonnegative number of bits"))
        }
        Some(bits) => Guard::with_limit(bits),
        None => Guard::default(),
    };
    let artifact = run::execute(&config.resolve()?, config.seed, &guard)?;
    Ok(output::render(&config, artifact))
}

/// Runs a config and writes the artifact to `output_path` or standard output.
pub fn run_and_write(config: &ExperimentConfig) -> Result<()> {
    let text = run(config)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
