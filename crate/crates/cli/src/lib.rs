//! Batch driver for the cubical lattice checks: verification suites, convergence studies and
//! report merging, all writing schema-versioned JSON.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub mod config;
pub mod continuum;
pub mod converge;
pub mod merge;
pub mod report;
pub mod suites;

pub use config::{Command, LatticeMode, RunConfig};
pub use report::{CheckResult, Report, SCHEMA};

/// Environment variable naming the directory reports go to when `--out` is not given.
pub const OUT_DIR_VAR: &str = "CUBICAL_OUT_DIR";

/// Validates the config and runs its command.
pub fn execute(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let checks = match config.command {
        Command::Verify => suites::run_all(config),
        Command::Converge => converge::run(config),
    };
    Ok(Report::new(config, checks))
}

pub fn default_output(dir: &Path, command: Command) -> PathBuf {
    dir.join(match command {
        Command::Verify => "verify.json",
        Command::Converge => "converge.json",
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
