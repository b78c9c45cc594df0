//! Run configuration. Precedence: command-line flags, then `SYMAVOID_*`
//! environment variables, then the TOML config file, then defaults.

use std::env;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Deserialize;
use symavoid::family::DEFAULT_NODE_BUDGET;
use symavoid::perm::DEFAULT_ENUMERATION_CAP;
use symavoid::verify::{CheckConfig, DEFAULT_SAMPLE_COUNT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Machine,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| anyhow::anyhow!("unknown format {s:?}"))
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Machine => "machine",
        })
    }
}

/// Settings as given on the command line; `None` means unset.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub budget: Option<u64>,
    pub enum_cap: Option<usize>,
    pub samples: Option<u64>,
    pub cache: Option<PathBuf>,
    pub no_cache: bool,
    pub partial: bool,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    enumeration_cap: Option<usize>,
    node_budget: Option<u64>,
    sample_count: Option<u64>,
    output_format: Option<Format>,
    cache_path: Option<PathBuf>,
    partial_allowed: Option<bool>,
    seed: Option<u64>,
    threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub enumeration_cap: usize,
    pub node_budget: u64,
    pub sample_count: u64,
    pub output_format: Format,
    /// `None` disables the on-disk Kostka cache.
    pub cache_path: Option<PathBuf>,
    pub partial_allowed: bool,
    pub seed: u64,
    /// `None` uses one worker per logical core.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn check_config(&self) -> CheckConfig {
        CheckConfig {
            enumeration_cap: self.enumeration_cap,
            node_budget: self.node_budget,
            partial_allowed: self.partial_allowed,
            sample_count: self.sample_count,
            seed: self.seed,
        }
    }

    pub fn resolve(flags: &Overrides) -> Result<Self> {
        Self::resolve_with(flags, |key| env::var(key).ok())
    }

    pub fn resolve_with(flags: &Overrides, env: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let config_path = flags.config.clone().or_else(|| env("SYMAVOID_CONFIG").map(PathBuf::from));
        let file = match &config_path {
            Some(p) => load_file(p)?,
            None => FileConfig::default(),
        };
        let raw = |key: &str| env(key).filter(|v| !v.is_empty());

        let enumeration_cap = flags
            .enum_cap
            .or(parsed("SYMAVOID_ENUM_CAP", raw("SYMAVOID_ENUM_CAP"))?)
            .or(file.enumeration_cap)
            .unwrap_or(DEFAULT_ENUMERATION_CAP);
        let node_budget = flags
            .budget
            .or(parsed("SYMAVOID_BUDGET", raw("SYMAVOID_BUDGET"))?)
            .or(file.node_budget)
            .unwrap_or(DEFAULT_NODE_BUDGET);
        let sample_count = flags
            .samples
            .or(parsed("SYMAVOID_SAMPLES", raw("SYMAVOID_SAMPLES"))?)
            .or(file.sample_count)
            .unwrap_or(DEFAULT_SAMPLE_COUNT);
        let output_format = flags
            .format
            .or(parsed("SYMAVOID_FORMAT", raw("SYMAVOID_FORMAT"))?)
            .or(file.output_format)
            .unwrap_or(Format::Text);
        let partial_allowed = if flags.partial {
            true
        } else {
            parsed::<bool>("SYMAVOID_PARTIAL", raw("SYMAVOID_PARTIAL"))?.or(file.partial_allowed).unwrap_or(false)
        };
        let seed = flags.seed.or(parsed("SYMAVOID_SEED", raw("SYMAVOID_SEED"))?).or(file.seed).unwrap_or(0);
        let threads = flags.threads.or(parsed("SYMAVOID_THREADS", raw("SYMAVOID_THREADS"))?).or(file.threads);
        let cache_path = if flags.no_cache {
            None
        } else {
            flags
                .cache
                .clone()
                .or_else(|| env("SYMAVOID_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from))
                .or(file.cache_path)
                .or_else(|| default_cache_path(&env))
        };
        if enumeration_cap == 0 || node_budget == 0 || sample_count == 0 || threads == Some(0) {
            bail!("enumeration cap, budget, sample count and thread count must be positive");
        }
        Ok(Self {
            enumeration_cap,
            node_budget,
            sample_count,
            output_format,
            cache_path,
            partial_allowed,
            seed,
            threads,
        })
    }
}

fn parsed<T: FromStr>(key: &str, raw: Option<String>) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    raw.map(|v| v.parse::<T>().map_err(|e| anyhow::anyhow!("{key}={v:?}: {e}"))).transpose()
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

/// `$XDG_DATA_HOME/symavoid/kostka.json`, else under `~/.local/share`.
fn default_cache_path(env: &impl Fn(&str) -> Option<String>) -> Option<PathBuf> {
    let base = env("XDG_DATA_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| env("HOME").filter(|v| !v.is_empty()).map(|h| Path::new(&h).join(".local/share")))?;
    Some(base.join("symavoid").join("kostka.json"))
}
