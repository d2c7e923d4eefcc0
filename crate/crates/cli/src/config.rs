use std::path::Path;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Lln,
    Aep,
    Code,
    ChannelInfo,
    Capacity,
    CodingExperiment,
}

/// On-disk experiment description. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandName,
    #[serde(default = "empty_params")]
    pub params: serde_json::Value,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default)]
    pub format: Format,
    /// Enumeration limit in bits; the library default applies when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard_override: Option<f64>,
}

fn empty_params() -> serde_json::Value {
    serde_json::Value::Object(Default::default())
}

impl ExperimentConfig {
    /// Reads `.toml` or `.json` by extension.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        let bad = |e: &dyn std::fmt::Display| CliError::config(format!("{}: {e}", path.display()));
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text).map_err(|e| bad(&e)),
            Some("json") => serde_json::from_str(&text).map_err(|e| bad(&e)),
            _ => Err(CliError::config(format!(
                "{}: config must end in .toml or .json",
                path.display()
            ))),
        }
    }

    /// Parses `params` into the typed form for `command`, filling defaults.
    pub fn resolve(&self) -> Result<Params> {
        fn typed<P: serde::de::DeserializeOwned>(v: &serde_json::Value) -> Result<P> {
            serde_json::from_value(v.clone()).map_err(|e| CliError::config(format!("params: {e}")))
        }
        let p = &self.params;
        Ok(match self.command {
            CommandName::Lln => Params::Lln(typed(p)?),
            CommandName::Aep => Params::Aep(typed(p)?),
            CommandName::Code => Params::Code(typed(p)?),
            CommandName::ChannelInfo => Params::ChannelInfo(typed(p)?),
            CommandName::Capacity => Params::Capacity(typed(p)?),
            CommandName::CodingExperiment => Params::CodingExperiment(typed(p)?),
        })
    }

    /// The same config with every parameter spelled out.
    pub fn resolved(&self) -> Result<Self> {
        let params = self.resolve()?.to_value();
        Ok(Self {
            params,
            ..self.clone()
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    Lln(LlnParams),
    Aep(AepParams),
    Code(CodeParams),
    ChannelInfo(ChannelInfoParams),
    Capacity(CapacityParams),
    CodingExperiment(CodingParams),
}

impl Params {
    pub fn command(&self) -> CommandName {
        match self {
            Self::Lln(_) => CommandName::Lln,
            Self::Aep(_) => CommandName::Aep,
            Self::Code(_) => CommandName::Code,
            Self::ChannelInfo(_) => CommandName::ChannelInfo,
            Self::Capacity(_) => CommandName::Capacity,
            Self::CodingExperiment(_) => CommandName::CodingExperiment,
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        let v = match self {
            Self::Lln(p) => serde_json::to_value(p),
            Self::Aep(p) => serde_json::to_value(p),
            Self::Code(p) => serde_json::to_value(p),
            Self::ChannelInfo(p) => serde_json::to_value(p),
            Self::Capacity(p) => serde_json::to_value(p),
            Self::CodingExperiment(p) => serde_json::to_value(p),
        };
        v.expect("params serialize")
    }
}

/// Moments and Chebyshev tails of the sample mean.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct LlnParams {
    /// State weights, e.g. "0.7,0.3"
    #[arg(long)]
    pub state: String,
    /// Observable values on the atoms (default 0,1,…,d−1)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<String>,
    /// Block lengths: "a:b", "a:b:step" or "n1,n2,…"
    #[arg(long, default_value = "1:100")]
    #[serde(default = "default_lln_n")]
    pub n: String,
    /// Central moment orders
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    #[serde(default = "default_moments")]
    pub moments: Vec<u32>,
    /// Deviation threshold for the tail probability
    #[arg(long, default_value_t = 0.1)]
    #[serde(default = "default_eps")]
    pub eps: f64,
}

/// Typical-set enumeration over a range of block lengths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct AepParams {
    /// Source weights, e.g. "0.9,0.1"
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 0.1)]
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Block lengths: "a:b", "a:b:step" or "n1,n2,…"
    #[arg(long, default_value = "1:10")]
    #[serde(default = "default_aep_n")]
    pub n: String,
}

/// Kraft check/construction, Huffman codes and expected lengths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct CodeParams {
    /// Source weights
    #[arg(long)]
    pub state: String,
    /// Code alphabet size
    #[arg(long = "alphabet", default_value_t = 2)]
    #[serde(default = "default_alphabet")]
    pub alphabet: usize,
    /// Build an optimal code
    #[arg(long)]
    #[serde(default)]
    pub huffman: bool,
    /// Word lengths for the Kraft construction, e.g. "1,2,2"
    #[arg(long, conflicts_with_all = ["huffman", "words"])]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<String>,
    /// Explicit code words, e.g. "0,10,11"
    #[arg(long, conflicts_with = "huffman")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<String>,
}

/// Classification and information metrics of a channel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct ChannelInfoParams {
    /// bsc(p), bec(p), identity(d), useless(row) or a JSON file
    #[arg(long)]
    pub channel: String,
    /// Input weights (default uniform)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
}

/// Channel capacity by alternating maximization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct CapacityParams {
    #[arg(long)]
    pub channel: String,
    /// Stop when the upper/lower bound gap falls below this
    #[arg(long, default_value_t = 1e-9)]
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

/// Random-coding experiment: deviation and error per block length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct CodingParams {
    #[arg(long)]
    pub channel: String,
    /// Input weights (default uniform)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    /// Rate in bits per channel use
    #[arg(long)]
    pub rate: f64,
    /// Block lengths
    #[arg(long, default_value = "4,8,12")]
    #[serde(default = "default_ks")]
    pub ks: String,
    #[arg(long, default_value_t = 20)]
    #[serde(default = "default_trials")]
    pub trials: usize,
}

fn default_lln_n() -> String {
    "1:100".into()
}
fn default_moments() -> Vec<u32> {
    vec![2, 4]
}
fn default_eps() -> f64 {
    0.1
}
fn default_aep_n() -> String {
    "1:10".into()
}
fn default_alphabet() -> usize {
    2
}
fn default_tol() -> f64 {
    1e-9
}
fn default_max_iter() -> usize {
    100_000
}
fn default_ks() -> String {
    "4,8,12".into()
}
fn default_trials() -> usize {
    20
}
