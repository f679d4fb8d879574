//! Run configuration: defaults, config-file parsing, and flag merging.
//! Command-line flags win over config-file values; unknown keys are
//! rejected.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use mbep_core::analysis::NoiseConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "table" => Ok(Self::Table),
            other => Err(format!(
                "unknown format '{other}' (expected csv|json|table)"
            )),
        }
    }
}

/// Options shared by every subcommand, with file/flag merging applied.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub protocols: Vec<String>,
    pub depths: Option<Vec<usize>>,
    /// Noise grid as 1−p values.
    pub noise_grid: Vec<f64>,
    pub format: OutputFormat,
    pub seed: u64,
    pub convention: NoiseConvention,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub bisection_tol: Option<f64>,
    pub convergence_tol: Option<f64>,
    pub max_rounds: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            protocols: vec!["deutsch".into(), "code-513".into()],
            depths: None,
            noise_grid: vec![0.01, 0.03, 0.05, 0.10],
            format: OutputFormat::Table,
            seed: 1,
            convention: NoiseConvention::default(),
            jobs: None,
            out: None,
            bisection_tol: None,
            convergence_tol: None,
            max_rounds: None,
        }
    }
}

/// Values provided on the command line; `None` falls back to the config
/// file, then to defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub protocols: Option<Vec<String>>,
    pub depths: Option<Vec<usize>>,
    pub noise_grid: Option<Vec<f64>>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub convention: Option<NoiseConvention>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub bisection_tol: Option<f64>,
    pub convergence_tol: Option<f64>,
    pub max_rounds: Option<usize>,
}

/// Parse a plain-text key=value config file. `#` starts a comment; blank
/// lines are ignored; unknown keys are errors.
pub fn parse_config_file(path: &Path) -> anyhow::Result<Overrides> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| anyhow::anyhow!("config {}: {e}", path.display()))
}

pub fn parse_config(text: &str) -> Result<Overrides, String> {
    let mut overrides = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected key = value", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        let fail = |e: String| format!("line {}: {key}: {e}", lineno + 1);
        match key {
            "protocol" => overrides.protocols = Some(parse_list(value, |s| Ok(s.to_string()))?),
            "depth" => {
                overrides.depths = Some(
                    parse_list(value, |s| s.parse::<usize>().map_err(|e| e.to_string()))
                        .map_err(&fail)?,
                )
            }
            "noise-grid" => {
                overrides.noise_grid =
                    Some(parse_list(value, |s| parse_noise_value(s)).map_err(&fail)?)
            }
            "format" => overrides.format = Some(value.parse().map_err(&fail)?),
            "seed" => overrides.seed = Some(value.parse::<u64>().map_err(|e| fail(e.to_string()))?),
            "convention" => {
                overrides.convention = Some(
                    value
                        .parse()
                        .map_err(|e: mbep_core::Error| fail(e.to_string()))?,
                )
            }
            "jobs" => {
                overrides.jobs = Some(value.parse::<usize>().map_err(|e| fail(e.to_string()))?)
            }
            "out" => overrides.out = Some(PathBuf::from(value)),
            "bisection-tol" => {
                overrides.bisection_tol =
                    Some(value.parse::<f64>().map_err(|e| fail(e.to_string()))?)
            }
            "convergence-tol" => {
                overrides.convergence_tol =
                    Some(value.parse::<f64>().map_err(|e| fail(e.to_string()))?)
            }
            "max-rounds" => {
                overrides.max_rounds =
                    Some(value.parse::<usize>().map_err(|e| fail(e.to_string()))?)
            }
            other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(overrides)
}

/// Accepts "0.05" or "5%"; both mean 1−p = 0.05.
pub fn parse_noise_value(s: &str) -> Result<f64, String> {
    let (text, percent) = match s.strip_suffix('%') {
        Some(t) => (t, true),
        None => (s, false),
    };
    let v: f64 = text.trim().parse().map_err(|e| format!("{e}"))?;
    let v = if percent { v / 100.0 } else { v };
    if !(0.0..=1.0).contains(&v) {
        return Err(format!("noise level {s} outside [0, 1]"));
    }
    Ok(v)
}

pub fn parse_list<T>(
    value: &str,
    parse: impl Fn(&str) -> Result<T, String>,
) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse)
        .collect()
}

/// Merge precedence: flags > config file > defaults.
pub fn merge(file: Option<Overrides>, flags: Overrides) -> RunConfig {
    let mut config = RunConfig::default();
    for layer in [file, Some(flags)].into_iter().flatten() {
        if let Some(v) = layer.protocols {
            config.protocols = v;
        }
        if let Some(v) = layer.depths {
            config.depths = Some(v);
        }
        if let Some(v) = layer.noise_grid {
            config.noise_grid = v;
        }
        if let Some(v) = layer.format {
            config.format = v;
        }
        if let Some(v) = layer.seed {
            config.seed = v;
        }
        if let Some(v) = layer.convention {
            config.convention = v;
        }
        if let Some(v) = layer.jobs {
            config.jobs = Some(v);
        }
        if let Some(v) = layer.out {
            config.out = Some(v);
        }
        if let Some(v) = layer.bisection_tol {
            config.bisection_tol = Some(v);
        }
        if let Some(v) = layer.convergence_tol {
            config.convergence_tol = Some(v);
        }
        if let Some(v) = layer.max_rounds {
            config.max_rounds = Some(v);
        }
    }
    config
}
