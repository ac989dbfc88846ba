use serde::{Deserialize, Serialize};

use super::cumulant::{sigma_direct, sigma_extend};
use super::maps::{crumble, integrate, ScalePair};
use crate::algebra::{DgAlgebra, Homogeneous};
use crate::brackets::{closed_bracket, BracketRequest};
use crate::coalgebra::words::coderivation_extend;
use crate::coalgebra::Word;
use crate::error::{Error, Result};
use crate::lattice::{sample_polynomial, LatticeAlgebra, LatticeElement, LatticeSpec, Mode, Normalization, Role, Scale};
use crate::poly::PolynomialField;
use crate::scalar::{LaurentH, Valuation};

/// The map between adjacent scales for one role: integration of cochains (fine to coarse,
/// differentials over twice their own step) or crumbling of chains (coarse to fine, raw).
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleMap {
    pub pair: ScalePair,
    pub role: Role,
}

impl ScaleMap {
    pub fn new(pair: ScalePair, role: Role) -> Self {
        Self { pair, role }
    }

    pub fn source(&self) -> &LatticeSpec {
        match self.role {
            Role::Cochain => &self.pair.fine,
            Role::Chain => &self.pair.coarse,
        }
    }

    pub fn target(&self) -> &LatticeSpec {
        match self.role {
            Role::Cochain => &self.pair.coarse,
            Role::Chain => &self.pair.fine,
        }
    }

    pub fn normalization(&self) -> Normalization {
        match self.role {
            Role::Cochain => Normalization::OverTwoStep,
            Role::Chain => Normalization::Raw,
        }
    }

    pub fn source_algebra(&self) -> LatticeAlgebra {
        LatticeAlgebra::new(self.source(), self.role, self.normalization())
    }

    pub fn target_algebra(&self) -> LatticeAlgebra {
        LatticeAlgebra::new(self.target(), self.role, self.normalization())
    }

    pub fn apply(&self, x: &LatticeElement) -> Result<LatticeElement> {
        match self.role {
            Role::Cochain => integrate(&self.pair, x),
            Role::Chain => crumble(&self.pair, x),
        }
    }

    fn request(&self) -> BracketRequest {
        BracketRequest::new(self.role, self.normalization())
    }

    /// `σ_k` on homogeneous lattice letters.
    pub fn sigma(&self, letters: &[Homogeneous<LatticeElement>]) -> Result<LatticeElement> {
        sigma_direct(&self.source_algebra(), &self.target_algebra(), &|x: &LatticeElement| self.apply(x), letters)
    }
}

/// Cell degree of a field all of whose components have the same number of axes.
pub fn field_degree(field: &PolynomialField) -> Result<i32> {
    let mut degree = None;
    for (ty, _) in field.components() {
        let d = ty.count_ones() as i32;
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(Error::InvalidArgument("cumulant samples must be homogeneous fields".into()))
            }
            _ => {}
        }
    }
    Ok(degree.unwrap_or(0))
}

fn homogeneous_samples(spec: &LatticeSpec, role: Role, fields: &[PolynomialField]) -> Result<Vec<Homogeneous<LatticeElement>>> {
    fields
        .iter()
        .map(|f| Ok(Homogeneous::new(field_degree(f)?, sample_polynomial(spec, f, role)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaEntry {
    pub role: Role,
    pub k: usize,
    pub min_valuation: Valuation,
    pub bound: i32,
    /// Point (degree-zero) components vanished on every tuple.
    pub points_vanish: bool,
    /// Whether the bound is asserted or only recorded.
    pub enforced: bool,
    pub pass: bool,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub entries: Vec<SigmaEntry>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Least valuation of `σ_k` over cyclic tuples of samples, `2 <= k <= k_max`.
///
/// The bound `k - 1` is asserted for cochains; for chains the observed valuation is recorded.
/// Fields must be homogeneous in the cell degree.
pub fn sigma_divisibility_check(map: &ScaleMap, k_max: usize, fields: &[PolynomialField]) -> Result<SigmaReport> {
    let source = map.source();
    if source.scale != Scale::Formal || !matches!(source.mode, Mode::Window(_)) {
        return Err(Error::InvalidArgument("divisibility checks need formal window lattices".into()));
    }
    if fields.is_empty() || k_max < 2 {
        return Err(Error::InvalidArgument("need at least one sample and k_max >= 2".into()));
    }
    let samples = homogeneous_samples(source, map.role, fields)?;
    let per_k: Vec<Result<SigmaEntry>> = std::thread::scope(|s| {
        let handles: Vec<_> = (2..=k_max)
            .map(|k| {
                let samples = &samples;
                s.spawn(move || {
                    let mut best = Valuation::Infinite;
                    let mut witness = Vec::new();
                    let mut points_vanish = true;
                    for j in 0..samples.len() {
                        let idx: Vec<usize> = (0..k).map(|i| (j + i) % samples.len()).collect();
                        let letters: Vec<_> = idx.iter().map(|&i| samples[i].clone()).collect();
                        let value = map.sigma(&letters)?;
                        let v = value.valuation();
                        if witness.is_empty() || v < best {
                            best = v;
                            witness = idx;
                        }
                        points_vanish &= value.degree_part(0).is_zero();
                    }
                    let bound = k as i32 - 1;
                    let enforced = map.role == Role::Cochain;
                    Ok(SigmaEntry {
                        role: map.role,
                        k,
                        min_valuation: best,
                        bound,
                        points_vanish,
                        enforced,
                        pass: !enforced || (best.is_at_least(bound) && points_vanish),
                        witness,
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("cumulant worker panicked")).collect()
    });
    Ok(SigmaReport { entries: per_k.into_iter().collect::<Result<_>>()? })
}

/// `(σ ∘ D)_m` and `(D̄ ∘ σ)_m` on one word of `m` letters.
pub fn intertwine_sides(map: &ScaleMap, letters: &[Homogeneous<LatticeElement>]) -> Result<(LatticeElement, LatticeElement)> {
    let source = map.source_algebra();
    let target = map.target_algebra();
    let bar = |x: &LatticeElement| map.apply(x);
    let request = map.request();
    let bracket = |args: &[Homogeneous<LatticeElement>]| {
        let elems: Vec<LatticeElement> = args.iter().map(|x| x.elem.clone()).collect();
        closed_bracket(&request, &elems)
    };
    let word = vec![Word::new(letters.to_vec())];
    let mut lhs = target.zero();
    for j in 1..=letters.len() {
        for w in coderivation_extend(&source, &word, j, bracket)? {
            let s = sigma_direct(&source, &target, &bar, &w.letters)?;
            lhs = lhs.plus(&s.scaled(&w.coeff))?;
        }
    }
    let mut rhs = target.zero();
    for w in sigma_extend(&source, &target, &bar, &word[0])? {
        let b = bracket(&w.letters)?;
        rhs = rhs.plus(&b.scaled(&w.coeff))?;
    }
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwineEntry {
    pub order: usize,
    pub tuples: usize,
    /// Sample indices of tuples with a nonzero residue.
    pub failures: Vec<Vec<usize>>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwineReport {
    pub role: Role,
    pub orders: Vec<IntertwineEntry>,
    /// The order-two relation written out term by term, on the first two samples.
    pub long_hand: bool,
}

impl IntertwineReport {
    pub fn passed(&self) -> bool {
        self.long_hand && self.orders.iter().all(|e| e.pass)
    }
}

/// Order-`m` relations `Σ_{i+j=m+1} [σ_i, d'_j] = 0` for `1 <= m <= order_max`, on cyclic
/// tuples of homogeneous samples, plus the long-hand order-two identity.
pub fn intertwine_check(map: &ScaleMap, order_max: usize, fields: &[PolynomialField]) -> Result<IntertwineReport> {
    if order_max < 1 || fields.len() < 2 {
        return Err(Error::InvalidArgument("need order_max >= 1 and at least two samples".into()));
    }
    let samples = homogeneous_samples(map.source(), map.role, fields)?;
    let per_order: Vec<Result<IntertwineEntry>> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=order_max)
            .map(|m| {
                let samples = &samples;
                s.spawn(move || {
                    let mut failures = Vec::new();
                    for j in 0..samples.len() {
                        let idx: Vec<usize> = (0..m).map(|i| (j + i) % samples.len()).collect();
                        let letters: Vec<_> = idx.iter().map(|&i| samples[i].clone()).collect();
                        let (lhs, rhs) = intertwine_sides(map, &letters)?;
                        if !lhs.eq_on_overlap(&rhs)? {
                            failures.push(idx);
                        }
                    }
                    Ok(IntertwineEntry { order: m, tuples: samples.len(), pass: failures.is_empty(), failures })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("intertwining worker panicked")).collect()
    });
    let orders = per_order.into_iter().collect::<Result<Vec<_>>>()?;
    let long_hand = long_hand_check(map, &samples[0], &samples[1])?;
    Ok(IntertwineReport { role: map.role, orders, long_hand })
}

/// `bar[v, w] - [v̄, w̄] = d̄' σ_2(v ∧ w) - σ_2(d'v ∧ w + (-1)^|v| v ∧ d'w)`.
pub fn long_hand_check(map: &ScaleMap, v: &Homogeneous<LatticeElement>, w: &Homogeneous<LatticeElement>) -> Result<bool> {
    let request = map.request();
    let source = map.source_algebra();
    let target = map.target_algebra();
    let dd = map.role.diff_degree();
    let d1 = |x: &LatticeElement| source.diff(x);
    let left = map
        .apply(&closed_bracket(&request, &[v.elem.clone(), w.elem.clone()])?)?
        .minus(&closed_bracket(&request, &[map.apply(&v.elem)?, map.apply(&w.elem)?])?)?;
    let sigma2 = map.sigma(&[v.clone(), w.clone()])?;
    let dv = Homogeneous::new(v.degree + dd, d1(&v.elem)?);
    let dw = Homogeneous::new(w.degree + dd, d1(&w.elem)?);
    let sign = if v.degree.rem_euclid(2) == 0 { 1 } else { -1 };
    let right = target
        .diff(&sigma2)?
        .minus(&map.sigma(&[dv, w.clone()])?)?
        .minus(&map.sigma(&[v.clone(), dw])?.scaled(&LaurentH::from_int(sign)))?;
    left.eq_on_overlap(&right)
}
