//! The graded-symmetric coalgebra over a finite-basis algebra, in canonical form.
//!
//! Words are sorted multisets of basis indices with the Koszul sign of sorting absorbed into
//! the coefficient, so equality of elements is equality of maps.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::algebra::{AlgVector, GradedBasisAlgebra};
use crate::combinatorics::{cumulant_weight, factorial, ordered_partitions, subsets};
use crate::error::{Error, Result};
use crate::scalar::{int, LaurentH, Rational};

use super::sign::{blocks_sign, is_odd, parity, reorder_sign, subset_sign};

/// Basis word `e_{i_1} ∧ ... ∧ e_{i_k}` with `i_1 <= ... <= i_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SymWord(Vec<usize>);

impl SymWord {
    /// Sorts the indices; returns the word and the Koszul sign, or `None` if an odd index repeats.
    pub fn canonical(indices: &[usize], alg: &GradedBasisAlgebra) -> Option<(SymWord, i32)> {
        let mut order: Vec<usize> = (0..indices.len()).collect();
        order.sort_by_key(|&p| indices[p]);
        let letter_degrees: Vec<i32> = indices.iter().map(|&i| alg.degree(i)).collect();
        let sorted: Vec<usize> = order.iter().map(|&p| indices[p]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1] && is_odd(alg.degree(w[0]))) {
            return None;
        }
        Some((SymWord(sorted), reorder_sign(order, &letter_degrees)))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, alg: &GradedBasisAlgebra) -> i32 {
        self.0.iter().map(|&i| alg.degree(i)).sum()
    }

    pub fn letter_degrees(&self, alg: &GradedBasisAlgebra) -> Vec<i32> {
        self.0.iter().map(|&i| alg.degree(i)).collect()
    }

    fn sub(&self, positions: &[usize]) -> SymWord {
        SymWord(positions.iter().map(|&p| self.0[p]).collect())
    }
}

/// Sparse element of `S*V` (word length at least one).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymElement {
    terms: BTreeMap<SymWord, LaurentH>,
}

impl SymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis word on the given indices, in the given order.
    pub fn word(alg: &GradedBasisAlgebra, indices: &[usize]) -> Self {
        let mut out = Self::zero();
        out.add_indices(alg, indices, LaurentH::one());
        out
    }

    /// `x_1 ∧ ... ∧ x_k` for arbitrary algebra elements, expanded multilinearly.
    pub fn wedge(alg: &GradedBasisAlgebra, letters: &[AlgVector]) -> Self {
        let mut out = Self::zero();
        let mut combos: Vec<(Vec<usize>, LaurentH)> = vec![(Vec::new(), LaurentH::one())];
        for x in letters {
            let mut next = Vec::new();
            for (idx, c) in &combos {
                for (i, xc) in x.iter() {
                    let mut idx2 = idx.clone();
                    idx2.push(i);
                    next.push((idx2, c * xc));
                }
            }
            combos = next;
        }
        for (idx, c) in combos {
            out.add_indices(alg, &idx, c);
        }
        out
    }

    /// A single-letter element.
    pub fn letter(x: &AlgVector) -> Self {
        Self {
            terms: x.iter().map(|(i, c)| (SymWord(vec![i]), c.clone())).collect(),
        }
    }

    fn add_indices(&mut self, alg: &GradedBasisAlgebra, indices: &[usize], c: LaurentH) {
        if indices.is_empty() {
            return;
        }
        if let Some((w, sign)) = SymWord::canonical(indices, alg) {
            self.add_term(w, c.scale(&int(sign as i64)));
        }
    }

    /// Adds `c · w` for a word already in canonical form.
    pub fn add_term(&mut self, w: SymWord, c: LaurentH) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SymWord, &LaurentH)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &SymElement) -> SymElement {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &SymElement) -> SymElement {
        self.plus(&other.scaled(&LaurentH::from_int(-1)))
    }

    pub fn scaled(&self, c: &LaurentH) -> SymElement {
        let mut out = SymElement::zero();
        for (w, x) in self.iter() {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Component in `S^r V`.
    pub fn length_component(&self, r: usize) -> SymElement {
        SymElement {
            terms: self.terms.iter().filter(|(w, _)| w.len() == r).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(SymWord::len).max().unwrap_or(0)
    }

    /// Projection onto single letters.
    pub fn p1(&self) -> AlgVector {
        AlgVector::from_terms(self.terms.iter().filter(|(w, _)| w.len() == 1).map(|(w, c)| (w.0[0], c.clone())))
    }

    /// Applies a linear map defined on basis words.
    pub fn map_words<F>(&self, mut f: F) -> Result<SymElement>
    where
        F: FnMut(&SymWord) -> Result<SymElement>,
    {
        let mut out = SymElement::zero();
        for (w, c) in self.iter() {
            out = out.plus(&f(w)?.scaled(c));
        }
        Ok(out)
    }
}

impl Serialize for SymElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, c) in &self.terms {
            seq.serialize_element(&(w, c))?;
        }
        seq.end()
    }
}

/// Element of `(S*V)^{⊗r}`: sparse map from tuples of canonical words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymTensor {
    terms: BTreeMap<Vec<SymWord>, LaurentH>,
}

impl SymTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, factors: Vec<SymWord>, c: LaurentH) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(factors.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&factors);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<SymWord>, &LaurentH)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        for (f, c) in other.iter() {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    /// `a ⊗ b` for two elements.
    pub fn pair(a: &SymElement, b: &SymElement) -> SymTensor {
        let mut out = SymTensor::zero();
        for (wa, ca) in a.iter() {
            for (wb, cb) in b.iter() {
                out.add_term(vec![wa.clone(), wb.clone()], ca * cb);
            }
        }
        out
    }

    /// Applies `f` to factor `pos` only, as plain composition (no Koszul sign).
    pub fn map_factor<F>(&self, pos: usize, mut f: F) -> Result<SymTensor>
    where
        F: FnMut(&SymElement) -> Result<SymElement>,
    {
        let mut out = SymTensor::zero();
        for (factors, c) in self.iter() {
            let mut single = SymElement::zero();
            single.add_term(factors[pos].clone(), LaurentH::one());
            for (w, wc) in f(&single)?.iter() {
                let mut nf = factors.clone();
                nf[pos] = w.clone();
                out.add_term(nf, c * wc);
            }
        }
        Ok(out)
    }

    /// Replaces factor `pos` by its reduced coproduct, raising the arity by one.
    pub fn split_factor(&self, alg: &GradedBasisAlgebra, pos: usize) -> SymTensor {
        let mut out = SymTensor::zero();
        for (factors, c) in self.iter() {
            for (left, right, sign) in word_coproduct(alg, &factors[pos]) {
                let mut nf = factors[..pos].to_vec();
                nf.push(left);
                nf.push(right);
                nf.extend_from_slice(&factors[pos + 1..]);
                out.add_term(nf, c.scale(&int(sign as i64)));
            }
        }
        out
    }

    /// `P(v ⊗ w) = (-1)^(|v||w|) w ⊗ v` on a two-fold tensor.
    pub fn swap(&self, alg: &GradedBasisAlgebra) -> Result<SymTensor> {
        let mut out = SymTensor::zero();
        for (factors, c) in self.iter() {
            if factors.len() != 2 {
                return Err(Error::LengthMismatch { expected: 2, found: factors.len() });
            }
            let sign = parity(is_odd(factors[0].degree(alg) * factors[1].degree(alg)));
            out.add_term(vec![factors[1].clone(), factors[0].clone()], c.scale(&int(sign as i64)));
        }
        Ok(out)
    }
}

fn word_coproduct(alg: &GradedBasisAlgebra, w: &SymWord) -> Vec<(SymWord, SymWord, i32)> {
    let k = w.len();
    let degrees = w.letter_degrees(alg);
    let mut out = Vec::new();
    for subset in subsets(k) {
        if subset.is_empty() || subset.len() == k {
            continue;
        }
        let rest: Vec<usize> = (0..k).filter(|i| !subset.contains(i)).collect();
        out.push((w.sub(&subset), w.sub(&rest), subset_sign(&subset, &degrees)));
    }
    out
}

/// `Δ(v_1 ∧ ... ∧ v_k) = Σ_I ±^I v_I ⊗ v_{I^c}` over proper non-empty subsets.
pub fn reduced_coproduct(alg: &GradedBasisAlgebra, x: &SymElement) -> SymTensor {
    let mut out = SymTensor::zero();
    for (w, c) in x.iter() {
        for (left, right, sign) in word_coproduct(alg, w) {
            out.add_term(vec![left, right], c.scale(&int(sign as i64)));
        }
    }
    out
}

/// `Δ^{r-1}`, built as `(Δ ⊗ id^{⊗ n}) ∘ Δ^n`; `r = 1` returns `x` as a one-fold tensor.
pub fn iterated_coproduct(alg: &GradedBasisAlgebra, x: &SymElement, r: usize) -> Result<SymTensor> {
    if r == 0 {
        return Err(Error::InvalidArgument("iterated coproduct needs r >= 1".into()));
    }
    let mut t = SymTensor::zero();
    for (w, c) in x.iter() {
        t.add_term(vec![w.clone()], c.clone());
    }
    for _ in 1..r {
        t = t.split_factor(alg, 0);
    }
    Ok(t)
}

/// The iterated product of the letters of each word.
pub fn tau1(alg: &GradedBasisAlgebra, x: &SymElement) -> AlgVector {
    let mut out = AlgVector::zero();
    for (w, c) in x.iter() {
        out = out.plus(&word_product(alg, w.indices()).scaled(c));
    }
    out
}

fn word_product(alg: &GradedBasisAlgebra, indices: &[usize]) -> AlgVector {
    let mut acc = AlgVector::basis(indices[0]);
    for &i in &indices[1..] {
        acc = alg.multiply(&acc, &AlgVector::basis(i));
    }
    acc
}

/// Coalgebra map with Taylor coefficients `weight(|block|) · τ_1(block)`, summed over ordered
/// partitions with a `1/r!` correction.
fn product_lift<W: Fn(usize) -> Rational>(alg: &GradedBasisAlgebra, x: &SymElement, weight: W) -> SymElement {
    let mut out = SymElement::zero();
    for (w, c) in x.iter() {
        let k = w.len();
        let degrees = w.letter_degrees(alg);
        for r in 1..=k {
            let inv_fact = Rational::new(One::one(), factorial(r));
            for blocks in ordered_partitions(k, r) {
                let sign = blocks_sign(&blocks, &degrees);
                let mut coeff = int(sign as i64) * &inv_fact;
                let mut letters = Vec::with_capacity(r);
                for b in &blocks {
                    coeff *= weight(b.len());
                    let idx: Vec<usize> = b.iter().map(|&p| w.indices()[p]).collect();
                    letters.push(word_product(alg, &idx));
                }
                if coeff.is_zero() {
                    continue;
                }
                let term = SymElement::wedge(alg, &letters).scaled(&(c * &LaurentH::constant(coeff)));
                out = out.plus(&term);
            }
        }
    }
    out
}

/// The cumulant bijection `τ`, the coalgebra lift of `τ_1`.
pub fn tau(alg: &GradedBasisAlgebra, x: &SymElement) -> SymElement {
    product_lift(alg, x, |_| Rational::one())
}

/// `τ^{-1}`, with block weights `(-1)^(k-1) (k-1)!`.
pub fn tau_inv(alg: &GradedBasisAlgebra, x: &SymElement) -> SymElement {
    product_lift(alg, x, cumulant_weight)
}

/// Extension of the differential as a coderivation.
pub fn d_hat(alg: &GradedBasisAlgebra, x: &SymElement) -> SymElement {
    let mut out = SymElement::zero();
    for (w, c) in x.iter() {
        let mut prefix = 0;
        for i in 0..w.len() {
            let dv = alg.basis_differential(w.indices()[i]);
            if !dv.is_zero() {
                let sign = parity(is_odd(prefix));
                let letters: Vec<AlgVector> = w
                    .indices()
                    .iter()
                    .enumerate()
                    .map(|(j, &b)| if j == i { dv.clone() } else { AlgVector::basis(b) })
                    .collect();
                out = out.plus(&SymElement::wedge(alg, &letters).scaled(&c.scale(&int(sign as i64))));
            }
            prefix += alg.degree(w.indices()[i]);
        }
    }
    out
}

/// `id̄(x) = (-1)^|x| x` on words.
pub fn sign_twist(alg: &GradedBasisAlgebra, x: &SymElement) -> SymElement {
    let mut out = SymElement::zero();
    for (w, c) in x.iter() {
        let sign = parity(is_odd(w.degree(alg)));
        out.add_term(w.clone(), c.scale(&int(sign as i64)));
    }
    out
}

/// `D = τ^{-1} ∘ d̂ ∘ τ`
pub fn conjugated_coderivation(alg: &GradedBasisAlgebra, x: &SymElement) -> SymElement {
    tau_inv(alg, &d_hat(alg, &tau(alg, x)))
}

/// Coderivation generated by a bracket defined on `k`-letter basis words:
/// `Σ_{|I|=k} ±^I b(v_I) ∧ v_{I^c}`.
pub fn coderivation_extend<F>(alg: &GradedBasisAlgebra, x: &SymElement, k: usize, mut bracket: F) -> Result<SymElement>
where
    F: FnMut(&SymWord) -> Result<AlgVector>,
{
    let mut out = SymElement::zero();
    for (w, c) in x.iter() {
        if w.len() < k {
            continue;
        }
        let degrees = w.letter_degrees(alg);
        for subset in subsets(w.len()).filter(|s| s.len() == k) {
            let b = bracket(&w.sub(&subset))?;
            if b.is_zero() {
                continue;
            }
            let mut letters = vec![b];
            letters.extend((0..w.len()).filter(|i| !subset.contains(i)).map(|i| AlgVector::basis(w.indices()[i])));
            let sign = subset_sign(&subset, &degrees);
            out = out.plus(&SymElement::wedge(alg, &letters).scaled(&c.scale(&int(sign as i64))));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext2() -> GradedBasisAlgebra {
        // generators a = e1, b = e2 of degree 1
        GradedBasisAlgebra::exterior(&[1, 1], 1).unwrap()
    }

    #[test]
    fn canonical_sign_and_vanishing() {
        let alg = ext2();
        let ab = SymElement::word(&alg, &[1, 2]);
        let ba = SymElement::word(&alg, &[2, 1]);
        assert_eq!(ba, ab.scaled(&LaurentH::from_int(-1)));
        assert!(SymElement::word(&alg, &[1, 1]).is_zero());
        // the degree-2 element ab may repeat
        assert_eq!(SymElement::word(&alg, &[3, 3]).len(), 1);
    }

    #[test]
    fn tau1_examples() {
        let alg = ext2();
        assert_eq!(tau1(&alg, &SymElement::word(&alg, &[1])), AlgVector::basis(1));
        assert_eq!(tau1(&alg, &SymElement::word(&alg, &[1, 2])), AlgVector::basis(3));
    }

    #[test]
    fn tau_two_letters() {
        let alg = ext2();
        let ab = SymElement::word(&alg, &[1, 2]);
        let prod = SymElement::letter(&AlgVector::basis(3));
        assert_eq!(tau(&alg, &ab), prod.plus(&ab));
        assert_eq!(tau_inv(&alg, &ab), ab.minus(&prod));
    }

    #[test]
    fn single_letter_has_no_coproduct() {
        let alg = ext2();
        assert!(reduced_coproduct(&alg, &SymElement::word(&alg, &[1])).is_zero());
    }
}
