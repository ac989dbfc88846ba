use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks::{intertwine_check, sigma_divisibility_check, IntertwineEntry, ScaleMap, SigmaEntry};
use super::maps::{check_chain_map, check_cochain_map, check_duality, crumble, integrate, GeneratorCheck, ScalePair};
use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, LatticeSpec, Mode, Region, Role, Scale};
use crate::poly::PolynomialField;
use crate::scalar::{rat, LaurentH};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerConfig {
    pub dim: usize,
    /// `N` of the finest periodic lattice.
    pub period: u32,
    /// Scale indices `m` with `h = h_0 · 2^-m`; must be consecutive.
    pub levels: Vec<u32>,
    pub role: Role,
    /// Window radius in steps of each pair's fine lattice.
    pub radius: i64,
    pub k_max: usize,
    pub order_max: usize,
    pub samples: usize,
    pub degree: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    /// Scale indices of the fine and coarse lattice.
    pub fine_level: u32,
    pub coarse_level: u32,
    pub chain_map: GeneratorCheck,
    pub duality: GeneratorCheck,
    pub sigma_valuations: Vec<SigmaEntry>,
    pub intertwine_orders: Vec<IntertwineEntry>,
    pub long_hand: bool,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.chain_map.passed()
            && self.duality.passed()
            && self.long_hand
            && self.sigma_valuations.iter().all(|e| e.pass)
            && self.intertwine_orders.iter().all(|e| e.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerReport {
    pub role: Role,
    pub pairs: Vec<PairReport>,
    /// The composite from the finest to the coarsest level, when there are at least three.
    pub composite: Option<GeneratorCheck>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(PairReport::passed) && self.composite.as_ref().is_none_or(GeneratorCheck::passed)
    }
}

fn periodic_at(dim: usize, period: u32, spacing: i64) -> Result<LatticeSpec> {
    LatticeSpec::new(dim, period, spacing, Mode::Periodic, Scale::Formal)
}

/// Random fields, each homogeneous in the cell degree: every fourth one has positive degree,
/// the rest are functions.
///
/// Cumulants of point values vanish, and products of several forms often do, so cyclic tuples
/// of up to four samples then contain exactly one form and have generically nonzero cumulants.
pub fn homogeneous_fields(rng: &mut ChaCha8Rng, dim: usize, count: usize, degree: u32) -> Vec<PolynomialField> {
    use rand::Rng;
    (0..count)
        .map(|i| {
            let d = if i % 4 == 0 { rng.gen_range(1..=dim as u32) } else { 0 };
            let types: Vec<u32> = (0..1u32 << dim).filter(|t| t.count_ones() == d).collect();
            PolynomialField::random(rng, dim, &types, degree)
        })
        .collect()
}

/// Checks every adjacent pair of an inverse (cochains) or direct (chains) system of lattices,
/// pairs in parallel, and the composite map across all levels.
pub fn scale_tower(config: &TowerConfig) -> Result<TowerReport> {
    let mut levels = config.levels.clone();
    if levels.len() < 2 {
        return Err(Error::InvalidArgument("a tower needs at least two levels".into()));
    }
    levels.sort_unstable_by(|a, b| b.cmp(a));
    if levels.windows(2).any(|w| w[0] != w[1] + 1) {
        return Err(Error::InvalidArgument(format!("levels must be consecutive, got {:?}", config.levels)));
    }
    let steps = levels.len() - 1;
    let needed = 1u32 << steps;
    if config.period % needed != 0 {
        return Err(Error::InvalidArgument(format!(
            "{} levels need N divisible by {needed}, got {}",
            levels.len(),
            config.period
        )));
    }
    let pairs: Vec<Result<PairReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..steps)
            .map(|j| {
                let levels = &levels;
                s.spawn(move || pair_report(config, j, levels[j], levels[j + 1]))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("tower worker panicked")).collect()
    });
    let pairs = pairs.into_iter().collect::<Result<Vec<_>>>()?;
    let composite = if levels.len() >= 3 { Some(composite_check(config, steps)?) } else { None };
    Ok(TowerReport { role: config.role, pairs, composite })
}

fn pair_report(config: &TowerConfig, j: usize, fine_level: u32, coarse_level: u32) -> Result<PairReport> {
    let spacing = 1i64 << j;
    let periodic = ScalePair::new(&periodic_at(config.dim, config.period >> j, spacing)?)?;
    let chain_map = match config.role {
        Role::Chain => check_chain_map(&periodic)?,
        Role::Cochain => check_cochain_map(&periodic)?,
    };
    let duality = check_duality(&periodic)?;
    let window = LatticeSpec::new(
        config.dim,
        1,
        spacing,
        Mode::Window(Region::cube(config.dim, config.radius * spacing)),
        Scale::Formal,
    )?;
    let map = ScaleMap::new(ScalePair::new(&window)?, config.role);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(j as u64));
    let fields = homogeneous_fields(&mut rng, config.dim, config.samples.max(2), config.degree);
    let sigma = sigma_divisibility_check(&map, config.k_max, &fields)?;
    let intertwine = intertwine_check(&map, config.order_max, &fields)?;
    Ok(PairReport {
        fine_level,
        coarse_level,
        chain_map,
        duality,
        sigma_valuations: sigma.entries,
        intertwine_orders: intertwine.orders,
        long_hand: intertwine.long_hand,
    })
}

/// Cochains: `2^-s δ_s ∘ B = B ∘ δ_0` for the composite integration `B` over `s` steps, on every
/// generator of the finest lattice. Chains: the composite crumbling is a chain map, on every
/// generator of the coarsest lattice.
fn composite_check(config: &TowerConfig, steps: usize) -> Result<GeneratorCheck> {
    let pairs = (0..steps)
        .map(|j| ScalePair::new(&periodic_at(config.dim, config.period >> j, 1 << j)?))
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let cells = match config.role {
        Role::Cochain => pairs[0].fine.cells(),
        Role::Chain => pairs[steps - 1].coarse.cells(),
    };
    let scale = LaurentH::constant(rat(1, 1 << steps));
    for cell in &cells {
        let ok = match config.role {
            Role::Cochain => {
                let f = LatticeElement::basis(&pairs[0].fine, Role::Cochain, &cell.center, cell.ty)?;
                let through = |mut x: LatticeElement| -> Result<LatticeElement> {
                    for p in &pairs {
                        x = integrate(p, &x)?;
                    }
                    Ok(x)
                };
                through(f.clone())?.coboundary()?.scaled(&scale) == through(f.coboundary()?)?
            }
            Role::Chain => {
                let x = LatticeElement::basis(&pairs[steps - 1].coarse, Role::Chain, &cell.center, cell.ty)?;
                let through = |mut x: LatticeElement| -> Result<LatticeElement> {
                    for p in pairs.iter().rev() {
                        x = crumble(p, &x)?;
                    }
                    Ok(x)
                };
                through(x.clone())?.boundary()? == through(x.boundary()?)?
            }
        };
        if !ok {
            failures.push(cell.clone());
        }
    }
    Ok(GeneratorCheck { generators: cells.len(), failures })
}
