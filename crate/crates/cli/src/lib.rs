//! Command-line harness: configuration, command dispatch and table output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod table;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::run_command;
pub use config::{key_table, parse_config, parse_config_with_overrides, Command, ConfigError, RunConfig};
pub use table::{emit_table, Cell, Format, Table, TableError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Domain(#[from] hshift_core::Error),
    #[error("output: {0}")]
    Table(#[from] TableError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for configuration problems, 3 for model-domain failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::ReadConfig { .. } => 2,
            CliError::Domain(_) => 3,
            CliError::Table(_) | CliError::Write { .. } => 1,
        }
    }
}

/// Renders command output. The first table uses the configured format;
/// any further table (a trajectory) is CSV, separated by a blank line.
pub fn render(cfg: &RunConfig, tables: &[Table]) -> Result<String, TableError> {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let format = if i == 0 { cfg.format() } else { Format::Csv };
        out.push_str(&emit_table(t, format)?);
    }
    Ok(out)
}

/// Parses, runs and renders in one step.
pub fn execute(text: &str, overrides: &[String], command: Command) -> Result<String, CliError> {
    let cfg = parse_config_with_overrides(text, overrides, command)?;
    let tables = run_command(&cfg)?;
    Ok(render(&cfg, &tables)?)
}
