use std::collections::BTreeMap;

use num::Zero;

use super::{Cell, LatticeElement, LatticeSpec, Role};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Rank of a sparse matrix (given as rows) by exact Gaussian elimination.
pub fn rational_rank(rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut rows: Vec<BTreeMap<usize, Rational>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut rank = 0;
    while let Some(pivot_row) = rows.pop() {
        let (&col, pv) = match pivot_row.iter().next() {
            Some(x) => x,
            None => continue,
        };
        rank += 1;
        let pv = pv.clone();
        for r in rows.iter_mut() {
            let Some(f) = r.get(&col).cloned() else { continue };
            let factor = f / &pv;
            for (c, v) in &pivot_row {
                let e = r.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    r.remove(c);
                }
            }
        }
        rows.retain(|r| !r.is_empty());
    }
    rank
}

/// `dim ker(∂ on C_0) - rank(∂ : C_1 -> C_0)` for the raw boundary of a periodic lattice.
pub fn degree0_homology_rank(spec: &LatticeSpec) -> Result<usize> {
    if !spec.is_periodic() {
        return Err(Error::InvalidArgument("homology needs a periodic lattice".into()));
    }
    let vertices = spec.vertices();
    let index: BTreeMap<Vec<i64>, usize> = vertices.iter().enumerate().map(|(i, p)| (p.to_vec(), i)).collect();
    let mut rows = Vec::new();
    for p in &vertices {
        for u in 0..spec.dim {
            let edge = LatticeElement::from_entries(spec, Role::Chain, [(Cell::new(p, 1 << u), 1.into())])?;
            let image = edge.boundary()?;
            let mut row = BTreeMap::new();
            for (c, v) in image.entries() {
                let value = v.as_constant().expect("raw boundary has constant coefficients");
                row.insert(index[&c.center.to_vec()], value);
            }
            rows.push(row);
        }
    }
    Ok(vertices.len() - rational_rank(rows))
}
