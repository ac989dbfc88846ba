use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cell, LatticeElement, LatticeSpec, Mode, Region, Role};
use crate::scalar::{int, rat, LaurentH};

/// A lattice and its coarsening with twice the spacing over the same box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalePair {
    pub fine: LatticeSpec,
    pub coarse: LatticeSpec,
}

impl ScalePair {
    /// Periodic lattices need an even `N`, so that both tori have side `4 N · spacing`.
    pub fn new(fine: &LatticeSpec) -> Result<Self> {
        let period = match fine.mode {
            Mode::Periodic => {
                if fine.period % 2 != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "coarsening a periodic lattice needs an even period, got {}",
                        fine.period
                    )));
                }
                fine.period / 2
            }
            Mode::Window(_) => fine.period,
        };
        let coarse = LatticeSpec::new(fine.dim, period, 2 * fine.spacing, fine.mode.clone(), fine.scale)?;
        Ok(Self { fine: fine.clone(), coarse })
    }

    /// Fine spacing, the `h` of the one-dimensional formulas.
    fn s(&self) -> i64 {
        self.fine.spacing
    }
}

/// Fine cells hit by the coarse point (or interval) at `a` along one axis.
fn preimage(a: i64, s: i64, interval: bool) -> Vec<i64> {
    let even = a.rem_euclid(4 * s) == 0;
    match (even, interval) {
        (true, false) => vec![a],
        (false, false) => vec![a - s],
        (true, true) => vec![a, a - 2 * s],
        (false, true) => vec![a - s, a + s],
    }
}

/// The coarse cell whose image contains the fine cell at `b` along one axis, if any.
fn image(b: i64, s: i64, interval: bool) -> Option<i64> {
    let r = b.rem_euclid(4 * s) / s;
    match (r, interval) {
        (0, _) => Some(b),
        (1, _) => Some(b + s),
        (2, true) => Some(b + 2 * s),
        (3, true) => Some(b - s),
        _ => None,
    }
}

fn region_offset(d: &Region, lo: i64, hi: i64) -> Region {
    Region::new(d.lo.iter().map(|x| x + lo).collect(), d.hi.iter().map(|x| x - hi).collect())
}

/// `ι`: coarse chains to fine chains.
pub fn crumble(pair: &ScalePair, x: &LatticeElement) -> Result<LatticeElement> {
    pair.coarse.ensure_same(x.spec())?;
    if x.role() != Role::Chain {
        return Err(Error::RoleMismatch { expected: "chain", found: x.role().name() });
    }
    let s = pair.s();
    // a fine cell at b reads coarse cells in [b - s, b + 2s]
    let domain = x.domain().map(|d| region_offset(d, s, 2 * s));
    if domain.as_ref().is_some_and(Region::is_empty) {
        return Err(Error::WindowOverflow("coarse window too small to crumble".into()));
    }
    let mut out = LatticeElement::zero(&pair.fine, Role::Chain).with_domain_unchecked(domain);
    for (cell, c) in x.entries() {
        let mut centers: Vec<Vec<i64>> = vec![Vec::with_capacity(pair.fine.dim)];
        for (u, &a) in cell.center.iter().enumerate() {
            let opts = preimage(a, s, cell.ty >> u & 1 == 1);
            centers = centers
                .into_iter()
                .flat_map(|p| {
                    opts.iter().map(move |&b| {
                        let mut q = p.clone();
                        q.push(b);
                        q
                    })
                })
                .collect();
        }
        for p in centers {
            out.add_entry(Cell::new(&p, cell.ty), c.clone());
        }
    }
    Ok(out)
}

/// `bar`: fine cochains to coarse cochains, averaging over the fine cells of each coarse one.
pub fn integrate(pair: &ScalePair, f: &LatticeElement) -> Result<LatticeElement> {
    pair.fine.ensure_same(f.spec())?;
    if f.role() != Role::Cochain {
        return Err(Error::RoleMismatch { expected: "cochain", found: f.role().name() });
    }
    let s = pair.s();
    // a coarse cell at a reads fine cells in [a - 2s, a + s]
    let domain = f.domain().map(|d| region_offset(d, 2 * s, s));
    if domain.as_ref().is_some_and(Region::is_empty) {
        return Err(Error::WindowOverflow("fine window too small to integrate".into()));
    }
    let mut out = LatticeElement::zero(&pair.coarse, Role::Cochain).with_domain_unchecked(domain);
    'cells: for (cell, c) in f.entries() {
        let mut center = Vec::with_capacity(cell.center.len());
        for (u, &b) in cell.center.iter().enumerate() {
            match image(b, s, cell.ty >> u & 1 == 1) {
                Some(a) => center.push(a),
                None => continue 'cells,
            }
        }
        let weight = rat(1, 1i64 << cell.ty.count_ones());
        out.add_entry(Cell::new(&center, cell.ty), c.scale(&weight));
    }
    Ok(out)
}

/// Volume-weighted pairing `Σ f(I_a) c(I_a) (2·step)^|I|` of a cochain with a chain.
pub fn pairing(f: &LatticeElement, c: &LatticeElement) -> Result<LaurentH> {
    f.spec().ensure_same(c.spec())?;
    if f.role() != Role::Cochain || c.role() != Role::Chain {
        return Err(Error::InvalidArgument("pairing takes a cochain and a chain".into()));
    }
    let spec = f.spec();
    let mut acc = LaurentH::zero();
    for (cell, v) in c.entries() {
        let w = f.get(cell);
        if w.is_zero() {
            continue;
        }
        let k = cell.degree();
        let volume = spec.step_power(k).scale(&int(1 << k));
        acc += &(&(v * &w) * &volume);
    }
    Ok(acc)
}

/// Outcome of an identity checked on every generator of a periodic lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub generators: usize,
    /// Generators on which the identity fails.
    pub failures: Vec<Cell>,
}

impl GeneratorCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_periodic(pair: &ScalePair) -> Result<()> {
    if !pair.fine.is_periodic() {
        return Err(Error::InvalidArgument("generator checks run on periodic lattices".into()));
    }
    Ok(())
}

/// `ι ∘ ∂̄ = ∂ ∘ ι` on every coarse cell.
pub fn check_chain_map(pair: &ScalePair) -> Result<GeneratorCheck> {
    require_periodic(pair)?;
    let cells = pair.coarse.cells();
    let mut failures = Vec::new();
    for cell in &cells {
        let x = LatticeElement::basis(&pair.coarse, Role::Chain, &cell.center, cell.ty)?;
        let lhs = crumble(pair, &x.boundary()?)?;
        let rhs = crumble(pair, &x)?.boundary()?;
        if lhs != rhs {
            failures.push(cell.clone());
        }
    }
    Ok(GeneratorCheck { generators: cells.len(), failures })
}

/// `½ δ̄ ∘ bar = bar ∘ δ` on every fine cell.
pub fn check_cochain_map(pair: &ScalePair) -> Result<GeneratorCheck> {
    require_periodic(pair)?;
    let cells = pair.fine.cells();
    let half = LaurentH::constant(rat(1, 2));
    let mut failures = Vec::new();
    for cell in &cells {
        let f = LatticeElement::basis(&pair.fine, Role::Cochain, &cell.center, cell.ty)?;
        let lhs = integrate(pair, &f)?.coboundary()?.scaled(&half);
        let rhs = integrate(pair, &f.coboundary()?)?;
        if lhs != rhs {
            failures.push(cell.clone());
        }
    }
    Ok(GeneratorCheck { generators: cells.len(), failures })
}

/// `⟨bar f, c̄⟩ = ⟨f, ι c̄⟩` for every fine cochain generator `f` and coarse chain generator `c̄`.
///
/// Both sides are tabulated as sparse matrices indexed by `(f, c̄)` and compared; pairs absent
/// from both are zero on both sides. Failures list the fine generators involved.
pub fn check_duality(pair: &ScalePair) -> Result<GeneratorCheck> {
    require_periodic(pair)?;
    let fine_cells = pair.fine.cells();
    let coarse_cells = pair.coarse.cells();
    let mut left: BTreeMap<(Cell, Cell), LaurentH> = BTreeMap::new();
    for cell in &fine_cells {
        let f = LatticeElement::basis(&pair.fine, Role::Cochain, &cell.center, cell.ty)?;
        let fbar = integrate(pair, &f)?;
        for (c, _) in fbar.entries() {
            let cbar = LatticeElement::basis(&pair.coarse, Role::Chain, &c.center, c.ty)?;
            left.insert((cell.clone(), c.clone()), pairing(&fbar, &cbar)?);
        }
    }
    let mut right: BTreeMap<(Cell, Cell), LaurentH> = BTreeMap::new();
    for c in &coarse_cells {
        let cbar = LatticeElement::basis(&pair.coarse, Role::Chain, &c.center, c.ty)?;
        let image = crumble(pair, &cbar)?;
        for (cell, _) in image.entries() {
            let f = LatticeElement::basis(&pair.fine, Role::Cochain, &cell.center, cell.ty)?;
            right.insert((cell.clone(), c.clone()), pairing(&f, &image)?);
        }
    }
    let mut failures: Vec<Cell> = Vec::new();
    for key in left.keys().chain(right.keys()) {
        let a = left.get(key).cloned().unwrap_or_default();
        let b = right.get(key).cloned().unwrap_or_default();
        if a != b && !failures.contains(&key.0) {
            failures.push(key.0.clone());
        }
    }
    Ok(GeneratorCheck { generators: fine_cells.len() * coarse_cells.len(), failures })
}
