//! Closed forms of the lattice brackets, one direction at a time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeElement, LatticeSpec, Normalization, Role};
use crate::scalar::{rat, LaurentH};

/// Which bracket family to evaluate and how the differential is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRequest {
    pub role: Role,
    pub normalization: Normalization,
    /// `Some(u)` for the component along `u`, `None` for the sum over directions.
    pub direction: Option<usize>,
}

impl BracketRequest {
    pub fn new(role: Role, normalization: Normalization) -> Self {
        Self { role, normalization, direction: None }
    }

    pub fn along(self, u: usize) -> Self {
        Self { direction: Some(u), ..self }
    }

    /// Factor relating this normalization to the half-step one (`d / 2·step`).
    fn rescale(&self, spec: &LatticeSpec) -> LaurentH {
        &self.normalization.factor(spec) * &spec.step().scale(&rat(2, 1))
    }
}

fn check_inputs(elements: &[LatticeElement], role: Role) -> Result<&LatticeSpec> {
    let first = elements
        .first()
        .ok_or_else(|| Error::InvalidArgument("bracket needs at least one input".into()))?;
    for x in elements {
        first.check_compatible(x)?;
    }
    if first.role() != role {
        return Err(Error::RoleMismatch { expected: role.name(), found: first.role().name() });
    }
    Ok(first.spec())
}

/// `Σ_i a_1 ⋯ a_{i-1} · c_i · b_{i+1} ⋯ b_k`, by prefix and suffix products.
fn telescoped(a: &[LatticeElement], c: &[LatticeElement], b: &[LatticeElement]) -> Result<LatticeElement> {
    let k = c.len();
    let mut suffix = vec![None; k + 1];
    for i in (0..k).rev() {
        suffix[i] = Some(match &suffix[i + 1] {
            None => b[i].clone(),
            Some(s) => b[i].wedge(s)?,
        });
    }
    let mut acc: Option<LatticeElement> = None;
    let mut prefix: Option<LatticeElement> = None;
    for i in 0..k {
        let mut term = match &prefix {
            None => c[i].clone(),
            Some(p) => p.wedge(&c[i])?,
        };
        if let Some(s) = &suffix[i + 1] {
            term = term.wedge(s)?;
        }
        acc = Some(match acc {
            None => term,
            Some(x) => x.plus(&term)?,
        });
        prefix = Some(match prefix {
            None => a[i].clone(),
            Some(p) => p.wedge(&a[i])?,
        });
    }
    Ok(acc.expect("k >= 1"))
}

/// `δ_{k,u} = step^(k-1) m_k ∘ Σ_i (-Δ'_u id̄)^{⊗(i-1)} ⊗ δ_{1,u} ⊗ Δ_u^{⊗(k-i)}` for `δ/(2·step)`,
/// evaluated on the ordered tuple of cochains.
pub fn delta_bracket_closed(elements: &[LatticeElement], u: usize) -> Result<LatticeElement> {
    let spec = check_inputs(elements, Role::Cochain)?;
    let k = elements.len() as i32;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for v in elements {
        a.push(v.sign_twist().divided_difference(u, false)?.scaled(&LaurentH::from_int(-1)));
        b.push(v.divided_difference(u, true)?);
        c.push(v.coboundary_dir(u)?);
    }
    // δ_{1,u} = δ_u / (2·step); the constant is applied once at the end
    Ok(telescoped(&a, &c, &b)?.scaled(&(&spec.step_power(k - 1) * &spec.inverse_step(2))))
}

/// `∂_{k,u} = -½ step^(k-2) Σ_i m_k ∘ [(Δ_u id̄)^{⊗(i-1)} ⊗ T'_u i_u ⊗ Δ_u^{⊗(k-i)}
///  + (-1)^k (Δ'_u id̄)^{⊗(i-1)} ⊗ T_u i_u ⊗ Δ'_u^{⊗(k-i)}]` for `∂/(2·step)`.
pub fn partial_bracket_closed(elements: &[LatticeElement], u: usize) -> Result<LatticeElement> {
    let spec = check_inputs(elements, Role::Chain)?;
    let k = elements.len();
    let mut fa = Vec::new();
    let mut fb = Vec::new();
    let mut fc = Vec::new();
    let mut ba = Vec::new();
    let mut bb = Vec::new();
    let mut bc = Vec::new();
    for v in elements {
        let twisted = v.sign_twist();
        let iu = v.interior(u)?;
        fa.push(twisted.divided_difference(u, true)?);
        fb.push(v.divided_difference(u, true)?);
        fc.push(iu.translate(u, true)?);
        ba.push(twisted.divided_difference(u, false)?);
        bb.push(v.divided_difference(u, false)?);
        bc.push(iu.translate(u, false)?);
    }
    let forward = telescoped(&fa, &fc, &fb)?;
    let backward = telescoped(&ba, &bc, &bb)?;
    let sum = if k % 2 == 0 { forward.plus(&backward)? } else { forward.minus(&backward)? };
    Ok(sum.scaled(&spec.step_power(k as i32 - 2).scale(&rat(-1, 2))))
}

/// Closed-form bracket for any request; sums over directions when none is fixed.
pub fn closed_bracket(request: &BracketRequest, elements: &[LatticeElement]) -> Result<LatticeElement> {
    let spec = check_inputs(elements, request.role)?;
    let one = |u: usize| match request.role {
        Role::Cochain => delta_bracket_closed(elements, u),
        Role::Chain => partial_bracket_closed(elements, u),
    };
    let raw = match request.direction {
        Some(u) => one(u)?,
        None => {
            let mut acc = one(0)?;
            for u in 1..spec.dim {
                acc = acc.plus(&one(u)?)?;
            }
            acc
        }
    };
    Ok(raw.scaled(&request.rescale(spec)))
}
