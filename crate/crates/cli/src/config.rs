//! Flat `key=value` experiment configuration.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// The experiments the runner knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    BornCheck,
    Theorem1,
    HiddenRoundtrip,
    Theorem2,
    SharpenSweep,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::BornCheck => "born-check",
            Experiment::Theorem1 => "theorem1",
            Experiment::HiddenRoundtrip => "hidden-roundtrip",
            Experiment::Theorem2 => "theorem2",
            Experiment::SharpenSweep => "sharpen-sweep",
        }
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "born-check" => Ok(Experiment::BornCheck),
            "theorem1" => Ok(Experiment::Theorem1),
            "hidden-roundtrip" => Ok(Experiment::HiddenRoundtrip),
            "theorem2" => Ok(Experiment::Theorem2),
            "sharpen-sweep" => Ok(Experiment::SharpenSweep),
            other => Err(format!(
                "unknown experiment '{other}' (expected one of: born-check, theorem1, hidden-roundtrip, theorem2, sharpen-sweep)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn name(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// A configuration error carries the offending line when it came from a file.
#[derive(Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub msg: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config error at line {line}: {}", self.msg),
            None => write!(f, "config error: {}", self.msg),
        }
    }
}

impl std::error::Error for ConfigError {}

impl ConfigError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            msg: msg.into(),
        }
    }

    pub fn plain(msg: impl Into<String>) -> Self {
        Self {
            line: None,
            msg: msg.into(),
        }
    }
}

/// Runner configuration. Every key is optional; the documented defaults
/// apply when absent.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub dt: f64,
    pub hbar: f64,
    pub qdim: usize,
    pub smear_m: usize,
    pub seed: u64,
    pub output_path: Option<String>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: None,
            grid_theta: 200,
            grid_phi: 400,
            dt: 1e-2,
            hbar: 1.0,
            qdim: 2,
            smear_m: 4,
            seed: 42,
            output_path: None,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    /// Output path: configured value or `<experiment>.<format>`.
    pub fn resolved_output_path(&self, experiment: Experiment) -> String {
        self.output_path
            .clone()
            .unwrap_or_else(|| format!("{}.{}", experiment.name(), self.format.name()))
    }

    /// Key/value echo written into the report metadata.
    pub fn echo(&self, experiment: Experiment) -> Vec<(String, String)> {
        vec![
            ("experiment".into(), experiment.name().into()),
            ("grid_theta".into(), self.grid_theta.to_string()),
            ("grid_phi".into(), self.grid_phi.to_string()),
            ("dt".into(), self.dt.to_string()),
            ("hbar".into(), self.hbar.to_string()),
            ("qdim".into(), self.qdim.to_string()),
            ("smear_m".into(), self.smear_m.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("format".into(), self.format.name().into()),
        ]
    }
}

fn parse_positive_int(key: &str, value: &str, line: usize) -> Result<usize, ConfigError> {
    let n: usize = value
        .parse()
        .map_err(|_| ConfigError::at(line, format!("{key} must be a positive integer, got '{value}'")))?;
    if n == 0 {
        return Err(ConfigError::at(line, format!("{key} must be positive")));
    }
    Ok(n)
}

fn parse_positive_float(key: &str, value: &str, line: usize) -> Result<f64, ConfigError> {
    let x: f64 = value
        .parse()
        .map_err(|_| ConfigError::at(line, format!("{key} must be a number, got '{value}'")))?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(ConfigError::at(line, format!("{key} must be positive")));
    }
    Ok(x)
}

/// Parse a flat `key=value` file: one pair per line, `#` comments, every
/// key optional, unknown keys rejected.
pub fn parse_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::plain(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::at(lineno, format!("expected key=value, got '{line}'")))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "experiment" => {
                cfg.experiment = Some(value.parse().map_err(|e| ConfigError::at(lineno, e))?)
            }
            "grid_theta" => cfg.grid_theta = parse_positive_int(key, value, lineno)?,
            "grid_phi" => cfg.grid_phi = parse_positive_int(key, value, lineno)?,
            "dt" => cfg.dt = parse_positive_float(key, value, lineno)?,
            "hbar" => cfg.hbar = parse_positive_float(key, value, lineno)?,
            "qdim" => {
                let d = parse_positive_int(key, value, lineno)?;
                if d < 2 {
                    return Err(ConfigError::at(lineno, "qdim must be at least 2"));
                }
                cfg.qdim = d;
            }
            "smear_m" => cfg.smear_m = parse_positive_int(key, value, lineno)?,
            "seed" => {
                cfg.seed = value.parse().map_err(|_| {
                    ConfigError::at(lineno, format!("seed must be a 64-bit unsigned integer, got '{value}'"))
                })?
            }
            "output_path" => cfg.output_path = Some(value.to_string()),
            "format" => cfg.format = value.parse().map_err(|e| ConfigError::at(lineno, e))?,
            other => {
                return Err(ConfigError::at(lineno, format!("unknown key '{other}'")));
            }
        }
    }
    Ok(cfg)
}
