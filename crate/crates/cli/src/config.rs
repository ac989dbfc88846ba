use std::path::PathBuf;

use anyhow::{bail, Result};
use cubical_cumulants::lattice::{LatticeSpec, Mode, Region, Scale};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Converge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    Periodic,
    Window,
}

/// Everything a run depends on. Two runs with equal configs write byte-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    /// `N`: periodic lattices have side `4N` steps.
    pub period: u32,
    pub mode: LatticeMode,
    /// Window half-width in lattice steps.
    pub radius: i64,
    pub k_max: usize,
    /// Total degree bound of sampled polynomials.
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    /// Scale indices `i` with `h = 2^-i`.
    pub levels: Vec<u32>,
    /// Highest order of the intertwining relations.
    pub order_max: usize,
    /// Corrupts one product constant of the test algebras (negative control).
    pub corrupt_products: bool,
    /// Not part of the report: the same run written to two places must produce the same bytes.
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Verify,
            n: 2,
            period: 1,
            mode: LatticeMode::Periodic,
            radius: 6,
            k_max: 4,
            degree: 4,
            samples: 20,
            seed: 0,
            levels: vec![3, 4, 5, 6],
            order_max: 3,
            corrupt_products: false,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn converge() -> Self {
        Self { command: Command::Converge, radius: 2, degree: 3, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n) {
            bail!("--n must be 1, 2 or 3, got {}", self.n);
        }
        if self.period == 0 {
            bail!("--N must be positive");
        }
        if self.radius < 1 {
            bail!("--radius must be positive, got {}", self.radius);
        }
        if !(2..=6).contains(&self.k_max) {
            bail!("--kmax must be in 2..=6, got {}", self.k_max);
        }
        if self.samples < 2 {
            bail!("--samples must be at least 2, got {}", self.samples);
        }
        if self.order_max < 1 {
            bail!("--order must be at least 1");
        }
        if self.command == Command::Converge {
            let mut levels = self.levels.clone();
            levels.sort_unstable();
            levels.dedup();
            if levels.len() < 3 {
                bail!("convergence needs at least three distinct levels, got {:?}", self.levels);
            }
            if levels.iter().any(|&l| l > 12) {
                bail!("levels above 12 are out of reach, got {:?}", self.levels);
            }
        }
        Ok(())
    }

    /// Lattice for the identity checks: periodic with period `N`, or a window of the given radius.
    pub fn lattice_spec(&self, n: usize) -> Result<LatticeSpec> {
        Ok(match self.mode {
            LatticeMode::Periodic => LatticeSpec::periodic(n, self.period)?,
            LatticeMode::Window => {
                LatticeSpec::new(n, 1, 1, Mode::Window(Region::cube(n, self.radius)), Scale::Formal)?
            }
        })
    }

    pub fn sorted_levels(&self) -> Vec<u32> {
        let mut levels = self.levels.clone();
        levels.sort_unstable();
        levels.dedup();
        levels
    }
}
