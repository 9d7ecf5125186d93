//! Flat `key = value` experiment configuration.
//!
//! One pair per line, `#` starts a comment, blank lines are ignored. Every
//! key is optional; missing keys keep the defaults of [`SimConfig::default`].

use std::fmt::Write as _;
use std::path::Path;

use ecsplit_core::mimo::{SimConfig, SimError};
use thiserror::Error;

pub const KEYS: [&str; 12] = [
    "m_t",
    "k_total",
    "k_active",
    "m_i",
    "snr_db",
    "inr_db",
    "frames",
    "packets",
    "seed",
    "alpha_grid_min",
    "alpha_grid_max",
    "alpha_grid_points",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {message}")]
    Value {
        line: usize,
        key: String,
        message: String,
    },
    #[error("invalid value for `{key}`: {reason}")]
    Domain { key: String, reason: String },
}

impl From<SimError> for ConfigError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidConfig { key, reason } => ConfigError::Domain {
                key: key.to_string(),
                reason,
            },
            other => ConfigError::Domain {
                key: "config".to_string(),
                reason: other.to_string(),
            },
        }
    }
}

fn value_error(line: usize, key: &str, message: impl ToString) -> ConfigError {
    ConfigError::Value {
        line,
        key: key.to_string(),
        message: message.to_string(),
    }
}

fn parse_count(line: usize, key: &str, value: &str) -> Result<usize, ConfigError> {
    value.parse().map_err(|e| value_error(line, key, e))
}

fn parse_real(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    value.parse().map_err(|e| value_error(line, key, e))
}

/// Parses config text and validates the result.
pub fn parse_config(text: &str) -> Result<SimConfig, ConfigError> {
    let mut cfg = SimConfig::default();
    let mut seen: Vec<&str> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        };
        if seen.contains(&known) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        seen.push(known);
        if value.is_empty() {
            return Err(value_error(line, key, "missing value"));
        }

        match known {
            "m_t" => cfg.m_t = parse_count(line, key, value)?,
            "k_total" => cfg.k_total = parse_count(line, key, value)?,
            "k_active" => cfg.k_active = parse_count(line, key, value)?,
            "m_i" => cfg.m_i = parse_count(line, key, value)?,
            "frames" => cfg.frames = parse_count(line, key, value)?,
            "packets" => cfg.packets = parse_count(line, key, value)?,
            "alpha_grid_points" => cfg.alpha_grid.points = parse_count(line, key, value)?,
            "seed" => cfg.seed = value.parse().map_err(|e| value_error(line, key, e))?,
            "inr_db" => cfg.inr_db = parse_real(line, key, value)?,
            "alpha_grid_min" => cfg.alpha_grid.min = parse_real(line, key, value)?,
            "alpha_grid_max" => cfg.alpha_grid.max = parse_real(line, key, value)?,
            "snr_db" => {
                cfg.snr_db_grid = value
                    .split(',')
                    .map(|v| parse_real(line, key, v.trim()))
                    .collect::<Result<_, _>>()?;
            }
            _ => unreachable!("every key in KEYS is handled"),
        }
    }

    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<SimConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

/// Writes every key, defaults included, in a form [`parse_config`] reads
/// back to an equal config. Reals use the shortest round-trip notation.
pub fn serialize_config(cfg: &SimConfig) -> String {
    let snr: Vec<String> = cfg.snr_db_grid.iter().map(|s| s.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "m_t = {}", cfg.m_t);
    let _ = writeln!(out, "k_total = {}", cfg.k_total);
    let _ = writeln!(out, "k_active = {}", cfg.k_active);
    let _ = writeln!(out, "m_i = {}", cfg.m_i);
    let _ = writeln!(out, "snr_db = {}", snr.join(", "));
    let _ = writeln!(out, "inr_db = {}", cfg.inr_db);
    let _ = writeln!(out, "frames = {}", cfg.frames);
    let _ = writeln!(out, "packets = {}", cfg.packets);
    let _ = writeln!(out, "seed = {}", cfg.seed);
    let _ = writeln!(out, "alpha_grid_min = {}", cfg.alpha_grid.min);
    let _ = writeln!(out, "alpha_grid_max = {}", cfg.alpha_grid.max);
    let _ = writeln!(out, "alpha_grid_points = {}", cfg.alpha_grid.points);
    out
}
