use std::collections::BTreeMap;

use super::{Cell, LatticeElement, LatticeSpec, Role};
use crate::algebra::{AlgVector, DgAlgebra, GradedBasisAlgebra};
use crate::error::{Error, Result};
use crate::scalar::LaurentH;

/// Scalar normalization of the differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `∂` or `δ` as is.
    Raw,
    /// Divided by twice the lattice step (`δ/2h`, `∂/2h`).
    OverTwoStep,
    /// Divided by the lattice step (`∂/h`).
    OverStep,
}

impl Normalization {
    pub fn factor(self, spec: &LatticeSpec) -> LaurentH {
        match self {
            Normalization::Raw => LaurentH::one(),
            Normalization::OverTwoStep => spec.inverse_step(2),
            Normalization::OverStep => spec.inverse_step(1),
        }
    }
}

/// The chain or cochain algebra of a lattice with a normalized differential, optionally
/// restricted to a single direction `u` (the component `d_u` of `d = Σ_u d_u`).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeAlgebra {
    pub spec: LatticeSpec,
    pub role: Role,
    pub normalization: Normalization,
    pub direction: Option<usize>,
}

impl LatticeAlgebra {
    pub fn new(spec: &LatticeSpec, role: Role, normalization: Normalization) -> Self {
        Self { spec: spec.clone(), role, normalization, direction: None }
    }

    pub fn along(&self, u: usize) -> Self {
        Self { direction: Some(u), ..self.clone() }
    }

    fn check(&self, x: &LatticeElement) -> Result<()> {
        self.spec.ensure_same(x.spec())?;
        if x.role() != self.role {
            return Err(Error::RoleMismatch { expected: self.role.name(), found: x.role().name() });
        }
        Ok(())
    }

    /// The periodic lattice as a finite-basis algebra, with the cell ordering used as basis.
    pub fn to_basis_algebra(&self) -> Result<(GradedBasisAlgebra, Vec<Cell>)> {
        if !self.spec.is_periodic() {
            return Err(Error::InvalidArgument("only periodic lattices have a finite basis".into()));
        }
        let cells = self.spec.cells();
        let index: BTreeMap<&Cell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let to_vec = |x: &LatticeElement| AlgVector::from_terms(x.entries().map(|(c, v)| (index[c], v.clone())));
        let degrees = cells.iter().map(Cell::degree).collect();
        let mut products = BTreeMap::new();
        let full = (1u32 << self.spec.dim) - 1;
        for (i, c) in cells.iter().enumerate() {
            // only cells at the same centre with disjoint types multiply
            let mut rest = full & !c.ty;
            loop {
                let other = Cell { center: c.center.clone(), ty: rest };
                let a = LatticeElement::from_entries(&self.spec, self.role, [(c.clone(), LaurentH::one())])?;
                let b = LatticeElement::from_entries(&self.spec, self.role, [(other.clone(), LaurentH::one())])?;
                products.insert((i, index[&other]), to_vec(&a.wedge(&b)?));
                if rest == 0 {
                    break;
                }
                rest = (rest - 1) & (full & !c.ty);
            }
        }
        let mut differential = Vec::with_capacity(cells.len());
        for c in &cells {
            let x = LatticeElement::from_entries(&self.spec, self.role, [(c.clone(), LaurentH::one())])?;
            differential.push(to_vec(&self.diff(&x)?));
        }
        let alg = GradedBasisAlgebra::new(degrees, products, differential, self.role.diff_degree())?;
        Ok((alg, cells))
    }

    pub fn element_to_vector(&self, cells: &[Cell], x: &LatticeElement) -> Result<AlgVector> {
        let index: BTreeMap<&Cell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut out = AlgVector::zero();
        for (c, v) in x.entries() {
            let i = index.get(c).ok_or_else(|| Error::LatticeMismatch(format!("cell {c:?} not in basis")))?;
            out.add_term(*i, v.clone());
        }
        Ok(out)
    }

    pub fn vector_to_element(&self, cells: &[Cell], v: &AlgVector) -> Result<LatticeElement> {
        LatticeElement::from_entries(&self.spec, self.role, v.iter().map(|(i, c)| (cells[i].clone(), c.clone())))
    }
}

impl DgAlgebra for LatticeAlgebra {
    type Elem = LatticeElement;

    fn zero(&self) -> LatticeElement {
        LatticeElement::zero(&self.spec, self.role)
    }

    fn is_zero(&self, x: &LatticeElement) -> bool {
        x.is_zero()
    }

    fn add(&self, x: &LatticeElement, y: &LatticeElement) -> Result<LatticeElement> {
        x.plus(y)
    }

    fn scale(&self, c: &LaurentH, x: &LatticeElement) -> LatticeElement {
        x.scaled(c)
    }

    fn mul(&self, x: &LatticeElement, y: &LatticeElement) -> Result<LatticeElement> {
        x.wedge(y)
    }

    fn diff(&self, x: &LatticeElement) -> Result<LatticeElement> {
        self.check(x)?;
        let raw = match self.direction {
            Some(u) => x.differential_dir(u)?,
            None => x.differential()?,
        };
        Ok(raw.scaled(&self.normalization.factor(&self.spec)))
    }

    fn diff_degree(&self) -> i32 {
        self.role.diff_degree()
    }

    fn homogeneous_parts(&self, x: &LatticeElement) -> Vec<(i32, LatticeElement)> {
        x.degrees().into_iter().map(|d| (d, x.degree_part(d))).collect()
    }
}
