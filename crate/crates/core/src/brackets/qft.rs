//! h-adic divisibility of the lattice brackets on polynomial samples.

use serde::{Deserialize, Serialize};

use super::closed::{closed_bracket, BracketRequest};
use crate::error::{Error, Result};
use crate::lattice::{sample_polynomial, LatticeSpec, Normalization, Role, Scale};
use crate::poly::PolynomialField;
use crate::scalar::Valuation;

/// Least valuation the `k`-bracket must have.
///
/// `δ/(2·step)`: `k - 1`. `∂/(2·step)` and `∂/step`: `k - 2`. The raw differentials pick up one
/// extra power of the step.
pub fn valuation_bound(role: Role, normalization: Normalization, k: usize) -> i32 {
    let base = match role {
        Role::Cochain => k as i32 - 1,
        Role::Chain => k as i32 - 2,
    };
    match normalization {
        Normalization::Raw => base + 1,
        Normalization::OverTwoStep | Normalization::OverStep => base,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationEntry {
    pub role: Role,
    pub normalization: Normalization,
    pub k: usize,
    /// `None` for the sum over directions.
    pub u: Option<usize>,
    pub min_valuation: Valuation,
    pub bound: i32,
    pub pass: bool,
    /// Sample indices of the input achieving the minimum.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationReport {
    pub entries: Vec<ValuationEntry>,
}

impl ValuationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// For each `2 <= k <= k_max` and each direction (and their sum), the least valuation of the
/// `k`-bracket over input tuples `(s_j, s_{j+1}, ..., s_{j+k-1})` taken cyclically from the samples.
pub fn binary_qft_check(
    spec: &LatticeSpec,
    role: Role,
    normalization: Normalization,
    k_max: usize,
    fields: &[PolynomialField],
) -> Result<ValuationReport> {
    if spec.scale != Scale::Formal {
        return Err(Error::InvalidArgument("valuations need a formal scale".into()));
    }
    if fields.is_empty() || k_max < 2 {
        return Err(Error::InvalidArgument("need at least one sample and k_max >= 2".into()));
    }
    let samples = fields
        .iter()
        .map(|f| sample_polynomial(spec, f, role))
        .collect::<Result<Vec<_>>>()?;
    let request = BracketRequest::new(role, normalization);
    let bound_for = |k| valuation_bound(role, normalization, k);
    let per_k: Vec<Result<Vec<ValuationEntry>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (2..=k_max)
            .map(|k| {
                let samples = &samples;
                s.spawn(move || {
                    // slot u < n is direction u, slot n the sum over directions
                    let n = spec.dim;
                    let mut best: Vec<(Valuation, Vec<usize>)> = vec![(Valuation::Infinite, Vec::new()); n + 1];
                    for j in 0..samples.len() {
                        let idx: Vec<usize> = (0..k).map(|i| (j + i) % samples.len()).collect();
                        let inputs: Vec<_> = idx.iter().map(|&i| samples[i].clone()).collect();
                        let mut total = None;
                        for (slot, entry) in best.iter_mut().enumerate().take(n) {
                            let part = closed_bracket(&request.along(slot), &inputs)?;
                            record(entry, part.valuation(), &idx);
                            total = Some(match total {
                                None => part,
                                Some(t) => part.plus(&t)?,
                            });
                        }
                        let total = total.expect("dimension >= 1");
                        record(&mut best[n], total.valuation(), &idx);
                    }
                    Ok(best
                        .into_iter()
                        .enumerate()
                        .map(|(slot, (min, witness))| ValuationEntry {
                            role,
                            normalization,
                            k,
                            u: (slot < n).then_some(slot),
                            min_valuation: min,
                            bound: bound_for(k),
                            pass: min.is_at_least(bound_for(k)),
                            witness,
                        })
                        .collect())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("valuation worker panicked")).collect()
    });
    let mut entries = Vec::new();
    for r in per_k {
        entries.extend(r?);
    }
    Ok(ValuationReport { entries })
}

fn record(best: &mut (Valuation, Vec<usize>), v: Valuation, idx: &[usize]) {
    if best.1.is_empty() || v < best.0 {
        *best = (v, idx.to_vec());
    }
}
