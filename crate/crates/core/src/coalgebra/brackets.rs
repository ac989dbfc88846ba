//! Three independent evaluations of the `k`-bracket `d_k = p_1 ∘ τ^{-1} ∘ d̂ ∘ τ` on `S^k V`.

use crate::algebra::{product, DgAlgebra, Homogeneous};
use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::scalar::LaurentH;

use super::sign::{is_odd, parity, subset_sign};
use super::words::{d_hat, p1_tau_inv, tau, Word};

fn signed<A: DgAlgebra>(alg: &A, sign: i32, x: &A::Elem) -> A::Elem {
    if sign == 1 {
        x.clone()
    } else {
        alg.scale(&LaurentH::from_int(-1), x)
    }
}

/// Conjugation route on homogeneous letters: `p_1 τ^{-1} d̂ τ (v_1 ∧ ... ∧ v_k)`.
pub fn bracket_conjugation<A: DgAlgebra>(alg: &A, letters: &[Homogeneous<A::Elem>]) -> Result<A::Elem> {
    if letters.is_empty() {
        return Err(Error::InvalidArgument("bracket needs at least one input".into()));
    }
    let words = vec![Word::new(letters.to_vec())];
    let lifted = tau(alg, &words)?;
    p1_tau_inv(alg, &d_hat(alg, &lifted)?)
}

/// Subset-sum formula `Σ_r (-1)^(k-r) Σ_{|I|=r} ±^I d(τ_1 v_I) · τ_1(v_{I^c})`.
pub fn bracket_direct<A: DgAlgebra>(alg: &A, letters: &[Homogeneous<A::Elem>]) -> Result<A::Elem> {
    let k = letters.len();
    if k == 0 {
        return Err(Error::InvalidArgument("bracket needs at least one input".into()));
    }
    let degrees: Vec<i32> = letters.iter().map(|x| x.degree).collect();
    let mut acc = alg.zero();
    for subset in subsets(k).filter(|s| !s.is_empty()) {
        let inside: Vec<&Homogeneous<A::Elem>> = subset.iter().map(|&i| &letters[i]).collect();
        let outside: Vec<&Homogeneous<A::Elem>> = (0..k).filter(|i| !subset.contains(i)).map(|i| &letters[i]).collect();
        let d_inside = alg.diff(&product(alg, &inside)?.elem)?;
        if alg.is_zero(&d_inside) {
            continue;
        }
        let term = if outside.is_empty() {
            d_inside
        } else {
            alg.mul(&d_inside, &product(alg, &outside)?.elem)?
        };
        let sign = subset_sign(&subset, &degrees) * parity((k - subset.len()) % 2 == 1);
        acc = alg.add(&acc, &signed(alg, sign, &term))?;
    }
    Ok(acc)
}

/// Commutator recursion:
/// `d_k(v_1 ∧ v_2 ∧ R) = d_{k-1}(v_1 v_2 ∧ R) - (-1)^|v_1| v_1 d_{k-1}(v_2 ∧ R)
///  - (-1)^(|v_2|(1+|v_1|)) v_2 d_{k-1}(v_1 ∧ R)`, bottoming out at `d_1 = d`.
pub fn bracket_recursive<A: DgAlgebra>(alg: &A, letters: &[Homogeneous<A::Elem>]) -> Result<A::Elem> {
    if letters.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "recursive bracket needs k >= 2, got {}",
            letters.len()
        )));
    }
    recurse(alg, letters)
}

fn recurse<A: DgAlgebra>(alg: &A, letters: &[Homogeneous<A::Elem>]) -> Result<A::Elem> {
    if letters.len() == 1 {
        return alg.diff(&letters[0].elem);
    }
    let (v1, v2, rest) = (&letters[0], &letters[1], &letters[2..]);
    let mut merged = vec![product(alg, &[v1, v2])?];
    merged.extend_from_slice(rest);
    let mut without1 = vec![v2.clone()];
    without1.extend_from_slice(rest);
    let mut without2 = vec![v1.clone()];
    without2.extend_from_slice(rest);

    let t1 = recurse(alg, &merged)?;
    let t2 = alg.mul(&v1.elem, &recurse(alg, &without1)?)?;
    let t3 = alg.mul(&v2.elem, &recurse(alg, &without2)?)?;
    let s2 = -parity(is_odd(v1.degree));
    let s3 = -parity(is_odd(v2.degree * (1 + v1.degree)));
    let acc = alg.add(&t1, &signed(alg, s2, &t2))?;
    alg.add(&acc, &signed(alg, s3, &t3))
}

/// Evaluates a bracket defined on homogeneous letters at inhomogeneous inputs.
pub fn bracket_multilinear<A, F>(alg: &A, inputs: &[A::Elem], mut f: F) -> Result<A::Elem>
where
    A: DgAlgebra,
    F: FnMut(&A, &[Homogeneous<A::Elem>]) -> Result<A::Elem>,
{
    crate::algebra::multilinear(alg, inputs, |letters| f(alg, letters))
}
