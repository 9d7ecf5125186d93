//! File formats and commands behind the `ecsplit` binary.

pub mod commands;
pub mod complex_text;
pub mod config;
pub mod manifest;
pub mod tables;
