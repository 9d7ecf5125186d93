use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use ecsplit_core::mimo::SimConfig;

use crate::config::serialize_config;

pub const MANIFEST_FILE: &str = "manifest.txt";

/// What a run was asked to do, written before any result file.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub config_path: PathBuf,
    pub output_dir: PathBuf,
    pub config: SimConfig,
    pub tool_version: String,
    pub started_at: DateTime<Utc>,
}

impl RunManifest {
    pub fn new(config_path: &Path, output_dir: &Path, config: SimConfig) -> Self {
        Self {
            config_path: config_path.to_path_buf(),
            output_dir: output_dir.to_path_buf(),
            config,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_at: Utc::now(),
        }
    }

    /// The resolved configuration section is itself a valid config file.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# ecsplit run manifest");
        let _ = writeln!(out, "# tool_version = {}", self.tool_version);
        let _ = writeln!(
            out,
            "# started_at = {}",
            self.started_at.to_rfc3339_opts(SecondsFormat::Secs, true)
        );
        let _ = writeln!(out, "# config_path = {}", self.config_path.display());
        let _ = writeln!(out, "# output_dir = {}", self.output_dir.display());
        let _ = writeln!(out, "# resolved configuration, defaults included:");
        out.push_str(&serialize_config(&self.config));
        out
    }

    pub fn write(&self) -> std::io::Result<PathBuf> {
        let path = self.output_dir.join(MANIFEST_FILE);
        std::fs::write(&path, self.render())?;
        Ok(path)
    }
}
