//! Run settings merged from flags, an optional `key = value` file, and defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    ClosedForm,
    Oracle,
    Both,
}

/// Flags shared by every subcommand. Anything left unset falls back to the
/// config file, then to the defaults in [`Settings::resolve`].
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Dunkl deformation parameter, > -1/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Mode frequency.
    #[arg(long, global = true)]
    pub omega: Option<f64>,
    /// Pump magnitude |f|.
    #[arg(long, global = true)]
    pub f_mag: Option<f64>,
    /// Pump phase theta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub f_phase: Option<f64>,
    /// Fock truncation (even, >= 4).
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Number state index.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Squeezing rapidity; solved from omega and |f| when absent.
    #[arg(long, global = true)]
    pub r: Option<f64>,
    /// Transformation phase override for `tilt` (defaults to the pump phase).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Plain-text `key = value` config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Comma-separated mu grid for `sweep`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu_list: Option<String>,
    /// Comma-separated r grid for `sweep`.
    #[arg(long, global = true)]
    pub r_list: Option<String>,
    /// Comma-separated n grid for `sweep`.
    #[arg(long, global = true)]
    pub n_list: Option<String>,
    /// Statistics source for `stats` and `sweep`.
    #[arg(long, global = true, value_enum)]
    pub source: Option<Source>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub mu: f64,
    pub omega: f64,
    pub f_mag: f64,
    pub f_phase: f64,
    pub dim: usize,
    pub n: usize,
    pub r: Option<f64>,
    pub phi: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub mu_list: Option<Vec<f64>>,
    pub r_list: Option<Vec<f64>>,
    pub n_list: Option<Vec<usize>>,
    pub source: Source,
}

const KEYS: &[&str] = &[
    "mu", "omega", "f_mag", "f_phase", "dim", "n", "r", "phi", "format", "out", "mu_list", "r_list", "n_list", "source",
];

/// Parses `key = value` lines. `#` starts a comment; keys may use `-` or `_`.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("config line {}: expected `key = value`", i + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Input(format!("config line {}: unknown key `{key}`", i + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parse_value<V: FromStr>(key: &str, value: &str) -> Result<V, CliError> {
    value.parse().map_err(|_| CliError::Input(format!("cannot parse {key} = `{value}`")))
}

pub fn parse_list<V: FromStr>(key: &str, value: &str) -> Result<Vec<V>, CliError> {
    let items: Vec<V> = value.split(',').map(|s| parse_value(key, s.trim())).collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(CliError::Input(format!("{key} must not be empty")));
    }
    Ok(items)
}

impl Settings {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => load(path)?,
            None => BTreeMap::new(),
        };
        let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
        fn scalar<V: FromStr>(v: Option<String>, key: &str) -> Result<Option<V>, CliError> {
            v.map(|s| parse_value(key, &s)).transpose()
        }
        fn list<V: FromStr>(v: Option<String>, key: &str) -> Result<Option<Vec<V>>, CliError> {
            v.map(|s| parse_list(key, &s)).transpose()
        }
        let format = choice(flags.format, file.get("format"), "format", Format::Table)?;
        let source = choice(flags.source, file.get("source"), "source", Source::ClosedForm)?;
        Ok(Self {
            mu: scalar(pick(flags.mu.map(|v| v.to_string()), "mu"), "mu")?.unwrap_or(0.0),
            omega: scalar(pick(flags.omega.map(|v| v.to_string()), "omega"), "omega")?.unwrap_or(1.0),
            f_mag: scalar(pick(flags.f_mag.map(|v| v.to_string()), "f_mag"), "f_mag")?.unwrap_or(0.0),
            f_phase: scalar(pick(flags.f_phase.map(|v| v.to_string()), "f_phase"), "f_phase")?.unwrap_or(0.0),
            dim: scalar(pick(flags.dim.map(|v| v.to_string()), "dim"), "dim")?.unwrap_or(dunkl_amp::DEFAULT_DIM),
            n: scalar(pick(flags.n.map(|v| v.to_string()), "n"), "n")?.unwrap_or(0),
            r: scalar(pick(flags.r.map(|v| v.to_string()), "r"), "r")?,
            phi: scalar(pick(flags.phi.map(|v| v.to_string()), "phi"), "phi")?,
            format,
            out: flags.out.clone().or_else(|| file.get("out").map(PathBuf::from)),
            mu_list: list(pick(flags.mu_list.clone(), "mu_list"), "mu_list")?,
            r_list: list(pick(flags.r_list.clone(), "r_list"), "r_list")?,
            n_list: list(pick(flags.n_list.clone(), "n_list"), "n_list")?,
            source,
        })
    }
}

fn choice<E: ValueEnum>(flag: Option<E>, file: Option<&String>, key: &str, default: E) -> Result<E, CliError> {
    match (flag, file) {
        (Some(v), _) => Ok(v),
        (None, Some(s)) => E::from_str(s, true).map_err(|_| CliError::Input(format!("unknown {key} `{s}`"))),
        (None, None) => Ok(default),
    }
}

fn load(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}
