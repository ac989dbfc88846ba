//! Sums of wedge words over an arbitrary [`DgAlgebra`], without a canonical form.
//!
//! These are used where the algebra has no convenient finite basis (lattices) and only the
//! length-one projection of the result matters. Identity checks in full generality live in
//! [`super::sym`].

use crate::algebra::{product, DgAlgebra, Homogeneous};
use crate::combinatorics::{cumulant_weight, set_partitions, subsets};
use crate::error::Result;
use crate::scalar::{int, LaurentH, Rational};

use super::sign::{blocks_sign, is_odd, parity, subset_sign};

/// `coeff · x_1 ∧ ... ∧ x_k`
#[derive(Debug, Clone)]
pub struct Word<E> {
    pub coeff: LaurentH,
    pub letters: Vec<Homogeneous<E>>,
}

impl<E> Word<E> {
    pub fn new(letters: Vec<Homogeneous<E>>) -> Self {
        Self { coeff: LaurentH::one(), letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.letters.iter().map(|x| x.degree).collect()
    }
}

pub type WordSum<E> = Vec<Word<E>>;

/// Coalgebra map with Taylor coefficients `f` (each degree-preserving), applied to a word sum.
///
/// Sums over unordered set partitions, so no factorial correction is needed. `f` receives the
/// letters of one block in increasing order.
pub fn coalgebra_extend<A, F>(alg: &A, words: &WordSum<A::Elem>, mut f: F) -> Result<WordSum<A::Elem>>
where
    A: DgAlgebra,
    F: FnMut(&[&Homogeneous<A::Elem>]) -> Result<Homogeneous<A::Elem>>,
{
    let mut out = Vec::new();
    for w in words {
        let degrees = w.degrees();
        for blocks in set_partitions(w.len()) {
            let sign = blocks_sign(&blocks, &degrees);
            let mut letters = Vec::with_capacity(blocks.len());
            let mut vanished = false;
            for b in &blocks {
                let args: Vec<&Homogeneous<A::Elem>> = b.iter().map(|&i| &w.letters[i]).collect();
                let y = f(&args)?;
                if alg.is_zero(&y.elem) {
                    vanished = true;
                    break;
                }
                letters.push(y);
            }
            if !vanished {
                out.push(Word { coeff: w.coeff.scale(&int(sign as i64)), letters });
            }
        }
    }
    Ok(out)
}

/// The cumulant bijection: Taylor coefficients are the iterated products.
pub fn tau<A: DgAlgebra>(alg: &A, words: &WordSum<A::Elem>) -> Result<WordSum<A::Elem>> {
    coalgebra_extend(alg, words, |block| product(alg, block))
}

/// Inverse cumulant bijection: Taylor coefficients `(-1)^(k-1) (k-1)!` times the product.
pub fn tau_inv<A: DgAlgebra>(alg: &A, words: &WordSum<A::Elem>) -> Result<WordSum<A::Elem>> {
    coalgebra_extend(alg, words, |block| {
        let p = product(alg, block)?;
        let c = LaurentH::constant(cumulant_weight(block.len()));
        Ok(Homogeneous::new(p.degree, alg.scale(&c, &p.elem)))
    })
}

/// Extension of the differential to words: `Σ_i (-1)^(|v_1|+...+|v_{i-1}|) ... ∧ d v_i ∧ ...`
pub fn d_hat<A: DgAlgebra>(alg: &A, words: &WordSum<A::Elem>) -> Result<WordSum<A::Elem>> {
    let dd = alg.diff_degree();
    let mut out = Vec::new();
    for w in words {
        let mut prefix = 0;
        for i in 0..w.len() {
            let dv = alg.diff(&w.letters[i].elem)?;
            if !alg.is_zero(&dv) {
                let mut letters = w.letters.clone();
                letters[i] = Homogeneous::new(w.letters[i].degree + dd, dv);
                let sign = parity(is_odd(prefix * dd));
                out.push(Word { coeff: w.coeff.scale(&int(sign as i64)), letters });
            }
            prefix += w.letters[i].degree;
        }
    }
    Ok(out)
}

/// Coderivation generated by a `k`-ary bracket: `Σ_{|I|=k} ±^I b(v_I) ∧ v_{I^c}`.
pub fn coderivation_extend<A, F>(alg: &A, words: &WordSum<A::Elem>, k: usize, mut bracket: F) -> Result<WordSum<A::Elem>>
where
    A: DgAlgebra,
    F: FnMut(&[Homogeneous<A::Elem>]) -> Result<A::Elem>,
{
    let mut out = Vec::new();
    for w in words {
        if w.len() < k {
            continue;
        }
        let degrees = w.degrees();
        for subset in subsets(w.len()).filter(|s| s.len() == k) {
            let args: Vec<Homogeneous<A::Elem>> = subset.iter().map(|&i| w.letters[i].clone()).collect();
            let y = bracket(&args)?;
            if alg.is_zero(&y) {
                continue;
            }
            let degree = args.iter().map(|x| x.degree).sum::<i32>() + alg.diff_degree();
            let mut letters = vec![Homogeneous::new(degree, y)];
            letters.extend((0..w.len()).filter(|i| !subset.contains(i)).map(|i| w.letters[i].clone()));
            let sign = subset_sign(&subset, &degrees);
            out.push(Word { coeff: w.coeff.scale(&int(sign as i64)), letters });
        }
    }
    Ok(out)
}

/// Projection onto single letters.
pub fn p1<A: DgAlgebra>(alg: &A, words: &WordSum<A::Elem>) -> Result<A::Elem> {
    let mut acc = alg.zero();
    for w in words.iter().filter(|w| w.len() == 1) {
        acc = alg.add(&acc, &alg.scale(&w.coeff, &w.letters[0].elem))?;
    }
    Ok(acc)
}

/// `p1 ∘ τ^{-1}`, using that on `k`-letter words it is `(-1)^(k-1) (k-1)!` times the product.
pub fn p1_tau_inv<A: DgAlgebra>(alg: &A, words: &WordSum<A::Elem>) -> Result<A::Elem> {
    let mut acc = alg.zero();
    for w in words {
        let refs: Vec<&Homogeneous<A::Elem>> = w.letters.iter().collect();
        let p = product(alg, &refs)?;
        let c = &w.coeff * &LaurentH::constant(cumulant_weight(w.len()));
        acc = alg.add(&acc, &alg.scale(&c, &p.elem))?;
    }
    Ok(acc)
}

/// Multiplies every coefficient by a rational.
pub fn scale_words<E: Clone>(words: &WordSum<E>, c: &Rational) -> WordSum<E> {
    words
        .iter()
        .map(|w| Word { coeff: w.coeff.scale(c), letters: w.letters.clone() })
        .collect()
}
