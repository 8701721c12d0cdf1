//! Sweep configuration: defaults, key=value config files, environment and
//! command-line overrides.
//!
//! Precedence, lowest to highest: built-in defaults, config file,
//! `TPJC_OUT_DIR` environment variable (output directory only), command-line
//! flags.

use std::path::{Path, PathBuf};

use thiserror::Error;

/// Environment variable overriding the output directory.
pub const OUT_DIR_ENV: &str = "TPJC_OUT_DIR";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown mode '{0}' (expected fig1, fig2, custom, or validate)")]
    UnknownMode(String),
    #[error("malformed line {line} in {path}: expected 'key = value'")]
    MalformedLine { path: String, line: usize },
    #[error("unknown key '{key}' in {path}")]
    UnknownKey { path: String, key: String },
    #[error("invalid value for '{key}': {value}")]
    InvalidValue { key: String, value: String },
    #[error("cannot read config file {path}: {source}")]
    Unreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("time horizon must be > 0, got {0}")]
    NonPositiveHorizon(f64),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("damping values must be >= 0, got {0}")]
    NegativeKappa(f64),
    #[error("intensity values must be >= 0, got {0}")]
    NegativeIntensity(f64),
    #[error("truncation epsilon must lie in (0, 1e-10], got {0} (the field-state constructors reject truncations leaving more than 1e-10 probability outside)")]
    EpsilonOutOfRange(f64),
    #[error("empty sweep list for '{0}'")]
    EmptyList(&'static str),
}

/// What the harness should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Damping sweep: κ/Ω ∈ {0.02, 0.04, 0.1} at n̄ = 1.
    Fig1,
    /// Intensity sweep: n̄ ∈ {1, 2, 3} at κ/Ω = 0.04.
    Fig2,
    /// Cartesian sweep over the configured κ and n̄ lists.
    Custom,
    /// Oracle-equivalence and invariant suite; exit 1 on any failure.
    Validate,
}

impl Mode {
    fn parse(s: &str) -> Result<Self, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig1" => Ok(Mode::Fig1),
            "fig2" => Ok(Mode::Fig2),
            "custom" => Ok(Mode::Custom),
            "validate" => Ok(Mode::Validate),
            other => Err(ConfigError::UnknownMode(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Fig1 => "fig1",
            Mode::Fig2 => "fig2",
            Mode::Custom => "custom",
            Mode::Validate => "validate",
        }
    }
}

/// Full sweep configuration.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub mode: Mode,
    /// κ/Ω list (custom mode; the fig modes pin their own).
    pub kappas: Vec<f64>,
    /// n̄ list (custom mode).
    pub nbars: Vec<f64>,
    /// (β₂ − β₁)/Ω.
    pub beta_diff: f64,
    /// Horizon in Ω-units.
    pub t_max: f64,
    /// Number of grid points, endpoints included.
    pub samples: usize,
    /// Truncation tail target for the initial coherent state.
    pub epsilon: f64,
    /// Output directory for CSV traces.
    pub out_dir: PathBuf,
}

impl SweepConfig {
    pub fn defaults(mode: Mode) -> Self {
        Self {
            mode,
            kappas: vec![0.04],
            nbars: vec![1.0],
            beta_diff: 0.02,
            t_max: 30.0,
            samples: 600,
            epsilon: 1e-12,
            out_dir: PathBuf::from("."),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return Err(ConfigError::NonPositiveHorizon(self.t_max));
        }
        if self.samples < 2 {
            return Err(ConfigError::TooFewSamples(self.samples));
        }
        if self.kappas.is_empty() {
            return Err(ConfigError::EmptyList("kappa"));
        }
        if self.nbars.is_empty() {
            return Err(ConfigError::EmptyList("nbar"));
        }
        for &k in &self.kappas {
            if k.is_nan() || k < 0.0 {
                return Err(ConfigError::NegativeKappa(k));
            }
        }
        for &n in &self.nbars {
            if n.is_nan() || n < 0.0 {
                return Err(ConfigError::NegativeIntensity(n));
            }
        }
        if self.epsilon.is_nan()
            || self.epsilon <= 0.0
            || self.epsilon > tpjc_core::fock::DEFAULT_TAIL_CEILING
        {
            return Err(ConfigError::EpsilonOutOfRange(self.epsilon));
        }
        Ok(())
    }

    /// Apply `key = value` pairs from a config file.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Unreadable {
            path: path.display().to_string(),
            source,
        })?;
        for (pairs, lineno) in parse_key_values(&text, path)? {
            self.apply_pair(&pairs.0, &pairs.1, path, lineno)?;
        }
        Ok(())
    }

    fn apply_pair(
        &mut self,
        key: &str,
        value: &str,
        path: &Path,
        _line: usize,
    ) -> Result<(), ConfigError> {
        let invalid = |key: &str, value: &str| ConfigError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "mode" => self.mode = Mode::parse(value)?,
            "kappa" => self.kappas = parse_list(value).ok_or_else(|| invalid(key, value))?,
            "nbar" => self.nbars = parse_list(value).ok_or_else(|| invalid(key, value))?,
            "beta-diff" | "beta_diff" => {
                self.beta_diff = value.trim().parse().map_err(|_| invalid(key, value))?
            }
            "tmax" | "t_max" => {
                self.t_max = value.trim().parse().map_err(|_| invalid(key, value))?
            }
            "samples" => {
                self.samples = value.trim().parse().map_err(|_| invalid(key, value))?
            }
            "epsilon" => {
                self.epsilon = value.trim().parse().map_err(|_| invalid(key, value))?
            }
            "out" => self.out_dir = PathBuf::from(value.trim()),
            other => {
                return Err(ConfigError::UnknownKey {
                    path: path.display().to_string(),
                    key: other.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Apply the output-directory environment override, if set.
    pub fn apply_env(&mut self) {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                self.out_dir = PathBuf::from(dir);
            }
        }
    }
}

/// Comma-separated float list.
pub fn parse_list(value: &str) -> Option<Vec<f64>> {
    let items: Result<Vec<f64>, _> =
        value.split(',').map(|tok| tok.trim().parse::<f64>()).collect();
    items.ok().filter(|v| !v.is_empty())
}

#[allow(clippy::type_complexity)]
fn parse_key_values(
    text: &str,
    path: &Path,
) -> Result<Vec<((String, String), usize)>, ConfigError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::MalformedLine {
            path: path.display().to_string(),
            line: idx + 1,
        })?;
        out.push(((key.trim().to_string(), value.trim().to_string()), idx + 1));
    }
    Ok(out)
}
