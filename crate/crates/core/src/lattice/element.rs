use std::collections::BTreeMap;
use std::ops::Bound;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ops::pair_sign;
use super::{Cell, Coords, LatticeSpec, Mode, Region, Role, Scale};
use crate::error::{Error, Result};
use crate::scalar::{int, LaurentH, Rational, Valuation};

/// Sparse chain or cochain. Window elements carry the box on which their values are known.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeElement {
    spec: LatticeSpec,
    role: Role,
    entries: BTreeMap<Cell, LaurentH>,
    domain: Option<Region>,
}

impl LatticeElement {
    pub fn zero(spec: &LatticeSpec, role: Role) -> Self {
        Self { spec: spec.clone(), role, entries: BTreeMap::new(), domain: None }
    }

    pub fn from_entries<I>(spec: &LatticeSpec, role: Role, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Cell, LaurentH)>,
    {
        let mut out = Self::zero(spec, role);
        for (cell, c) in entries {
            if !spec.is_vertex(&cell.center) || cell.ty >= 1 << spec.dim {
                return Err(Error::LatticeMismatch(format!("cell {cell:?} is not on this lattice")));
            }
            out.add_entry(cell, c);
        }
        Ok(out)
    }

    pub fn basis(spec: &LatticeSpec, role: Role, center: &[i64], ty: u32) -> Result<Self> {
        Self::from_entries(spec, role, [(Cell::new(center, ty), LaurentH::one())])
    }

    /// Adds `c` at `cell` after reducing periodic coordinates; skips cells outside the domain.
    pub(crate) fn add_entry(&mut self, mut cell: Cell, c: LaurentH) {
        if c.is_zero() {
            return;
        }
        self.spec.normalize(&mut cell.center);
        if let Some(d) = &self.domain {
            if !d.contains(&cell.center) {
                return;
            }
        }
        let entry = self.entries.entry(cell.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.entries.remove(&cell);
        }
    }

    pub(crate) fn empty_like(&self) -> Self {
        Self { spec: self.spec.clone(), role: self.role, entries: BTreeMap::new(), domain: self.domain.clone() }
    }

    pub(crate) fn with_domain_unchecked(mut self, domain: Option<Region>) -> Self {
        self.domain = domain;
        self
    }

    /// Restricts the known values to `region` (intersected with any existing domain).
    pub fn restrict(&self, region: &Region) -> Result<Self> {
        let domain = match &self.domain {
            Some(d) => d.intersect(region),
            None => region.clone(),
        };
        if domain.is_empty() {
            return Err(Error::WindowOverflow("restriction leaves no known values".into()));
        }
        let entries = self
            .entries
            .iter()
            .filter(|(c, _)| domain.contains(&c.center))
            .map(|(c, v)| (c.clone(), v.clone()))
            .collect();
        Ok(Self { spec: self.spec.clone(), role: self.role, entries, domain: Some(domain) })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Reinterprets a chain as a cochain or back (the lattice is self-dual).
    pub fn with_role(&self, role: Role) -> Self {
        Self { role, ..self.clone() }
    }

    /// Box of known values; `None` means known everywhere.
    pub fn domain(&self) -> Option<&Region> {
        self.domain.as_ref()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Cell, &LaurentH)> + '_ {
        self.entries.iter()
    }

    pub fn get(&self, cell: &Cell) -> LaurentH {
        let mut cell = cell.clone();
        self.spec.normalize(&mut cell.center);
        self.entries.get(&cell).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries at one vertex, by type.
    pub fn at(&self, center: &[i64]) -> impl Iterator<Item = (u32, &LaurentH)> + '_ {
        let c: Coords = center.iter().copied().collect();
        let lo = Cell { center: c.clone(), ty: 0 };
        let hi = Cell { center: c, ty: u32::MAX };
        self.entries.range((Bound::Included(lo), Bound::Included(hi))).map(|(cell, v)| (cell.ty, v))
    }

    pub fn check_compatible(&self, other: &LatticeElement) -> Result<()> {
        self.spec.ensure_same(&other.spec)?;
        if self.role != other.role {
            return Err(Error::RoleMismatch { expected: self.role.name(), found: other.role.name() });
        }
        Ok(())
    }

    fn joint_domain(&self, other: &LatticeElement) -> Result<Option<Region>> {
        match (&self.domain, &other.domain) {
            (None, None) => Ok(None),
            (Some(d), None) | (None, Some(d)) => Ok(Some(d.clone())),
            (Some(a), Some(b)) => {
                let d = a.intersect(b);
                if d.is_empty() {
                    return Err(Error::WindowOverflow("operands have no common known region".into()));
                }
                Ok(Some(d))
            }
        }
    }

    pub fn plus(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.check_compatible(other)?;
        let domain = self.joint_domain(other)?;
        let mut out = self.empty_like().with_domain_unchecked(domain);
        for (c, v) in self.entries.iter().chain(other.entries.iter()) {
            out.add_entry(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.plus(&other.scaled(&LaurentH::from_int(-1)))
    }

    pub fn scaled(&self, c: &LaurentH) -> LatticeElement {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (cell, v) in &self.entries {
            out.add_entry(cell.clone(), v * c);
        }
        out
    }

    /// Pointwise wedge product `(x·y)_I(a) = Σ_{J ⊔ K = I} ±_{J,K} x_J(a) y_K(a)`.
    pub fn wedge(&self, other: &LatticeElement) -> Result<LatticeElement> {
        self.check_compatible(other)?;
        let domain = self.joint_domain(other)?;
        let mut out = self.empty_like().with_domain_unchecked(domain);
        for (cx, vx) in &self.entries {
            for (ty, vy) in other.at(&cx.center) {
                if cx.ty & ty != 0 {
                    continue;
                }
                let c = (vx * vy).scale(&int(pair_sign(cx.ty, ty) as i64));
                out.add_entry(Cell { center: cx.center.clone(), ty: cx.ty | ty }, c);
            }
        }
        Ok(out)
    }

    /// Same values wherever both are known.
    pub fn eq_on_overlap(&self, other: &LatticeElement) -> Result<bool> {
        Ok(self.minus(other)?.is_zero())
    }

    /// Every cell moved to type `ty` at the same centre, with coefficients times `sign`.
    pub(crate) fn retyped(&self, ty: u32, sign: i32) -> LatticeElement {
        let mut out = self.empty_like();
        for (c, v) in &self.entries {
            out.add_entry(Cell { center: c.center.clone(), ty }, v.scale(&int(sign as i64)));
        }
        out
    }

    /// Component of cell dimension `k`.
    pub fn degree_part(&self, k: i32) -> LatticeElement {
        let mut out = self.empty_like();
        for (c, v) in self.entries.iter().filter(|(c, _)| c.degree() == k) {
            out.entries.insert(c.clone(), v.clone());
        }
        out
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.entries.keys().map(Cell::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Least h-valuation over all coefficients.
    pub fn valuation(&self) -> Valuation {
        self.entries.values().map(LaurentH::valuation).min().unwrap_or(Valuation::Infinite)
    }

    /// Largest absolute value of the coefficients at `h = 2^-level`.
    pub fn sup_norm_at(&self, level: u32) -> Rational {
        self.entries
            .values()
            .map(|v| v.evaluate_at_scale(level).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest absolute coefficient of an element of a numeric lattice.
    pub fn sup_norm(&self) -> Result<Rational> {
        match self.spec.scale {
            Scale::Numeric(level) => Ok(self.sup_norm_at(level)),
            Scale::Formal => Err(Error::InvalidArgument("sup norm needs a numeric scale".into())),
        }
    }

    pub fn to_file(&self) -> ElementFile {
        ElementFile {
            n: self.spec.dim,
            period: self.spec.period,
            spacing: self.spec.spacing,
            mode: self.spec.mode.clone(),
            scale: self.spec.scale,
            role: self.role,
            domain: self.domain.clone(),
            entries: self
                .entries
                .iter()
                .map(|(c, v)| CellEntry {
                    cell_type: c.axes(),
                    center: c.center.to_vec(),
                    coeff: v.clone(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &ElementFile) -> Result<Self> {
        let spec = LatticeSpec::new(file.n, file.period, file.spacing, file.mode.clone(), file.scale)?;
        let entries: Vec<(Cell, LaurentH)> = file
            .entries
            .iter()
            .map(|e| (Cell::new(&e.center, super::type_mask(&e.cell_type)), e.coeff.clone()))
            .collect();
        let mut out = Self::from_entries(&spec, file.role, entries)?;
        if let Some(d) = &file.domain {
            out = out.restrict(d)?;
        }
        Ok(out)
    }
}

impl Mode {
    pub fn region(&self) -> Option<&Region> {
        match self {
            Mode::Periodic => None,
            Mode::Window(r) => Some(r),
        }
    }
}

/// JSON form of an element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub n: usize,
    pub period: u32,
    pub spacing: i64,
    pub mode: Mode,
    pub scale: Scale,
    pub role: Role,
    pub domain: Option<Region>,
    pub entries: Vec<CellEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    #[serde(rename = "type")]
    pub cell_type: Vec<usize>,
    pub center: Vec<i64>,
    pub coeff: LaurentH,
}
