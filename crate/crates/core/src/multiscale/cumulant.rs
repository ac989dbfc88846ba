//! Commutative cumulants `σ_k` of a degree-preserving linear map between two algebras.

use crate::algebra::{homogeneous_expansion, product, AlgVector, DgAlgebra, GradedBasisAlgebra, Homogeneous};
use crate::coalgebra::{blocks_sign, koszul_sign};
use crate::coalgebra::words::{p1, tau, tau_inv, Word, WordSum};
use crate::combinatorics::{complement, cumulant_weight, set_partitions, subsets};
use crate::error::{Error, Result};
use crate::scalar::{int, LaurentH};

fn check_nonempty<E>(letters: &[E]) -> Result<()> {
    if letters.is_empty() {
        return Err(Error::InvalidArgument("cumulants need at least one input".into()));
    }
    Ok(())
}

fn degrees<E>(letters: &[Homogeneous<E>]) -> Vec<i32> {
    letters.iter().map(|x| x.degree).collect()
}

/// `σ_k(v_1 ∧ ... ∧ v_k) = Σ_π d_|π| ± bar(v_{I_1}) ⋯ bar(v_{I_r})` over unordered partitions.
pub fn sigma_direct<A, B, F>(source: &A, target: &B, bar: &F, letters: &[Homogeneous<A::Elem>]) -> Result<B::Elem>
where
    A: DgAlgebra,
    B: DgAlgebra,
    F: Fn(&A::Elem) -> Result<B::Elem>,
{
    check_nonempty(letters)?;
    let degrees = degrees(letters);
    let mut acc = target.zero();
    for blocks in set_partitions(letters.len()) {
        let mut value: Option<B::Elem> = None;
        for b in &blocks {
            let refs: Vec<&Homogeneous<A::Elem>> = b.iter().map(|&i| &letters[i]).collect();
            let image = bar(&product(source, &refs)?.elem)?;
            value = Some(match value {
                None => image,
                Some(v) => target.mul(&v, &image)?,
            });
        }
        let value = value.expect("partitions have at least one block");
        if target.is_zero(&value) {
            continue;
        }
        let c = cumulant_weight(blocks.len()) * int(blocks_sign(&blocks, &degrees) as i64);
        acc = target.add(&acc, &target.scale(&LaurentH::constant(c), &value))?;
    }
    Ok(acc)
}

/// `p_1 ∘ τ̄^{-1} ∘ S(bar) ∘ τ`, composing the coalgebra maps word by word.
pub fn sigma_composed<A, B, F>(source: &A, target: &B, bar: &F, letters: &[Homogeneous<A::Elem>]) -> Result<B::Elem>
where
    A: DgAlgebra,
    B: DgAlgebra,
    F: Fn(&A::Elem) -> Result<B::Elem>,
{
    check_nonempty(letters)?;
    let words = tau(source, &vec![Word::new(letters.to_vec())])?;
    let mut mapped: WordSum<B::Elem> = Vec::with_capacity(words.len());
    'words: for w in words {
        let mut out = Vec::with_capacity(w.len());
        for x in &w.letters {
            let y = bar(&x.elem)?;
            if target.is_zero(&y) {
                continue 'words;
            }
            out.push(Homogeneous::new(x.degree, y));
        }
        mapped.push(Word { coeff: w.coeff, letters: out });
    }
    p1(target, &tau_inv(target, &mapped)?)
}

/// `σ_{k+2}(u ∧ v ∧ w) = σ_{k+1}(uv ∧ w) - Σ_J ± σ(u ∧ w_J) σ(v ∧ w_{J^c})`, down to `σ_1 = bar`.
pub fn sigma_recursive<A, B, F>(source: &A, target: &B, bar: &F, letters: &[Homogeneous<A::Elem>]) -> Result<B::Elem>
where
    A: DgAlgebra,
    B: DgAlgebra,
    F: Fn(&A::Elem) -> Result<B::Elem>,
{
    check_nonempty(letters)?;
    if letters.len() == 1 {
        return bar(&letters[0].elem);
    }
    let (u, v, w) = (&letters[0], &letters[1], &letters[2..]);
    let mut merged = vec![product(source, &[u, v])?];
    merged.extend(w.iter().cloned());
    let mut acc = sigma_recursive(source, target, bar, &merged)?;
    // degrees of v, w_1, ..., w_k for the reordering v ∧ w -> w_J ∧ v ∧ w_{J^c}
    let mut vw = vec![v.degree];
    vw.extend(w.iter().map(|x| x.degree));
    for j in subsets(w.len()) {
        let jc = complement(&j, w.len());
        let mut perm: Vec<usize> = j.iter().map(|&i| i + 1).collect();
        perm.push(0);
        perm.extend(jc.iter().map(|&i| i + 1));
        let sign = koszul_sign(&perm, &vw)?;
        let mut left = vec![u.clone()];
        left.extend(j.iter().map(|&i| w[i].clone()));
        let mut right = vec![v.clone()];
        right.extend(jc.iter().map(|&i| w[i].clone()));
        let term = target.mul(
            &sigma_recursive(source, target, bar, &left)?,
            &sigma_recursive(source, target, bar, &right)?,
        )?;
        acc = target.sub(&acc, &target.scale(&LaurentH::from_int(sign as i64), &term))?;
    }
    Ok(acc)
}

/// [`sigma_direct`] on arbitrary (inhomogeneous) inputs, by multilinearity.
pub fn sigma_multilinear<A, B, F>(source: &A, target: &B, bar: &F, inputs: &[A::Elem]) -> Result<B::Elem>
where
    A: DgAlgebra,
    B: DgAlgebra,
    F: Fn(&A::Elem) -> Result<B::Elem>,
{
    let mut acc = target.zero();
    for combo in homogeneous_expansion(source, inputs) {
        acc = target.add(&acc, &sigma_direct(source, target, bar, &combo)?)?;
    }
    Ok(acc)
}

/// The coalgebra map with Taylor coefficients `σ_k` applied to one word: the sum over
/// unordered partitions of `± σ(v_{I_1}) ∧ ... ∧ σ(v_{I_r})`.
pub fn sigma_extend<A, B, F>(source: &A, target: &B, bar: &F, word: &Word<A::Elem>) -> Result<WordSum<B::Elem>>
where
    A: DgAlgebra,
    B: DgAlgebra,
    F: Fn(&A::Elem) -> Result<B::Elem>,
{
    let degrees = word.degrees();
    let mut out = Vec::new();
    'blocks: for blocks in set_partitions(word.len()) {
        let mut letters = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let args: Vec<Homogeneous<A::Elem>> = b.iter().map(|&i| word.letters[i].clone()).collect();
            let y = sigma_direct(source, target, bar, &args)?;
            if target.is_zero(&y) {
                continue 'blocks;
            }
            letters.push(Homogeneous::new(args.iter().map(|x| x.degree).sum(), y));
        }
        let sign = blocks_sign(&blocks, &degrees);
        out.push(Word { coeff: word.coeff.scale(&int(sign as i64)), letters });
    }
    Ok(out)
}

/// `a ⊗ b` in the basis of [`GradedBasisAlgebra::tensor`], given the second factor's dimension.
pub fn tensor_vector(a: &AlgVector, b: &AlgVector, second_dim: usize) -> AlgVector {
    let mut out = AlgVector::zero();
    for (i, ca) in a.iter() {
        for (j, cb) in b.iter() {
            out.add_term(i * second_dim + j, ca * cb);
        }
    }
    out
}

/// Pure tensors `v ⊗ w` of homogeneous letters; the degree is `|v| + |w|`.
pub type TensorLetter = (Homogeneous<AlgVector>, Homogeneous<AlgVector>);

/// Cumulants of `bar_V ⊗ bar_W` from those of the factors:
/// `Σ_π ± σ^V(v_{I_1}) ⋯ σ^V(v_{I_r}) ⊗ σ^W_r(w_{I_1} ∧ ... ∧ w_{I_r})`, each `w_{I_j}` being a
/// product in `W`. The sign reorders `v_1 w_1 ... v_k w_k` into `v_{I_1} ... v_{I_r} w_{I_1} ... w_{I_r}`.
///
/// `sigma_v` and `sigma_w` evaluate the factor cumulants on homogeneous letters.
pub fn tensor_cumulant<SV, SW>(
    w_alg: &GradedBasisAlgebra,
    vbar: &GradedBasisAlgebra,
    wbar_dim: usize,
    sigma_v: SV,
    sigma_w: SW,
    letters: &[TensorLetter],
) -> Result<AlgVector>
where
    SV: Fn(&[Homogeneous<AlgVector>]) -> Result<AlgVector>,
    SW: Fn(&[Homogeneous<AlgVector>]) -> Result<AlgVector>,
{
    check_nonempty(letters)?;
    let k = letters.len();
    let interleaved: Vec<i32> = letters.iter().flat_map(|(v, w)| [v.degree, w.degree]).collect();
    let mut acc = AlgVector::zero();
    for blocks in set_partitions(k) {
        let mut left: Option<AlgVector> = None;
        let mut merged = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let vs: Vec<Homogeneous<AlgVector>> = b.iter().map(|&i| letters[i].0.clone()).collect();
            let s = sigma_v(&vs)?;
            left = Some(match left {
                None => s,
                Some(x) => vbar.multiply(&x, &s),
            });
            let ws: Vec<&Homogeneous<AlgVector>> = b.iter().map(|&i| &letters[i].1).collect();
            merged.push(product(w_alg, &ws)?);
        }
        let left = left.expect("partitions have at least one block");
        if left.is_zero() {
            continue;
        }
        let right = sigma_w(&merged)?;
        let perm: Vec<usize> = blocks
            .iter()
            .flatten()
            .map(|&i| 2 * i)
            .chain(blocks.iter().flatten().map(|&i| 2 * i + 1))
            .collect();
        let sign = koszul_sign(&perm, &interleaved)?;
        let term = tensor_vector(&left, &right, wbar_dim);
        acc = acc.plus(&term.scaled(&LaurentH::from_int(sign as i64)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_exterior_algebra, random_graded_map, random_homogeneous};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn low_order_cumulants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = GradedBasisAlgebra::exterior(&[0, 1, 1], 1).unwrap();
        let map = random_graded_map(&mut rng, &v, &v);
        let bar = |x: &AlgVector| Ok(map.apply(x));
        let a = random_homogeneous(&v, &mut rng, 1);
        let b = random_homogeneous(&v, &mut rng, 0);
        assert_eq!(sigma_direct(&v, &v, &bar, &[a.clone()]).unwrap(), map.apply(&a.elem));
        let expected = map.apply(&v.multiply(&a.elem, &b.elem)).plus(
            &v.multiply(&map.apply(&a.elem), &map.apply(&b.elem)).scaled(&LaurentH::from_int(-1)),
        );
        assert_eq!(sigma_direct(&v, &v, &bar, &[a, b]).unwrap(), expected);
    }

    #[test]
    fn homomorphisms_have_no_higher_cumulants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v = GradedBasisAlgebra::exterior(&[0, 1, 2], 1).unwrap();
        let id = |x: &AlgVector| Ok(x.clone());
        for k in 2..=4 {
            let letters: Vec<_> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(0..=2);
                    random_homogeneous(&v, &mut rng, d)
                })
                .collect();
            assert!(sigma_direct(&v, &v, &id, &letters).unwrap().is_zero());
            assert!(sigma_recursive(&v, &v, &id, &letters).unwrap().is_zero());
        }
        let alg = random_exterior_algebra(&mut rng, 3, 1).unwrap();
        assert!(sigma_direct(&alg, &alg, &id, &[]).is_err());
    }
}
