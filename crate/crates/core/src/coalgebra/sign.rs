//! Koszul signs for reordering graded letters.

use crate::error::{Error, Result};

pub(crate) fn parity(odd: bool) -> i32 {
    if odd {
        -1
    } else {
        1
    }
}

pub(crate) fn is_odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

/// Sign of moving letters with the given degrees into a new order.
///
/// `perm[p]` is the original index of the letter that ends up at position `p`. Every pair of
/// letters that changes relative order contributes `(-1)^(|x_i| |x_j|)`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<i32> {
    if perm.len() != degrees.len() {
        return Err(Error::LengthMismatch { expected: degrees.len(), found: perm.len() });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(reorder_sign(perm.iter().copied(), degrees))
}

/// [`koszul_sign`] without validation; `order` lists original indices in their new order.
pub(crate) fn reorder_sign<I: IntoIterator<Item = usize>>(order: I, degrees: &[i32]) -> i32 {
    let order: Vec<usize> = order.into_iter().collect();
    let mut odd = false;
    for q in 0..order.len() {
        if !is_odd(degrees[order[q]]) {
            continue;
        }
        for p in 0..q {
            if order[p] > order[q] && is_odd(degrees[order[p]]) {
                odd = !odd;
            }
        }
    }
    parity(odd)
}

/// `±^I`: product of `(-1)^(|v_i| |v_j|)` over `i ∈ I`, `j ∉ I`, `i > j` (0-based indices).
pub fn subset_sign(subset: &[usize], degrees: &[i32]) -> i32 {
    let mut odd = false;
    for &i in subset {
        if !is_odd(degrees[i]) {
            continue;
        }
        for (j, &dj) in degrees.iter().enumerate().take(i) {
            if is_odd(dj) && !subset.contains(&j) {
                odd = !odd;
            }
        }
    }
    parity(odd)
}

/// Sign of reordering `0..k` into the concatenation of the given blocks.
pub fn blocks_sign(blocks: &[Vec<usize>], degrees: &[i32]) -> i32 {
    reorder_sign(blocks.iter().flatten().copied(), degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{complement, subsets};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 2, 3]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 2, 0], &[1, 1, 1]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[2, 1]).unwrap(), 1);
        assert!(matches!(koszul_sign(&[0, 1], &[1]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(koszul_sign(&[0, 0], &[1, 1]), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn subset_examples() {
        assert_eq!(subset_sign(&[0], &[1, 1]), 1);
        assert_eq!(subset_sign(&[1], &[1, 1]), -1);
    }

    // adjacent-transposition oracle: bubble sort the new order back and count odd swaps
    fn bubble_sign(order: &[usize], degrees: &[i32]) -> i32 {
        let mut v = order.to_vec();
        let mut sign = 1;
        for _ in 0..v.len() {
            for p in 0..v.len().saturating_sub(1) {
                if v[p] > v[p + 1] {
                    if degrees[v[p]] % 2 != 0 && degrees[v[p + 1]] % 2 != 0 {
                        sign = -sign;
                    }
                    v.swap(p, p + 1);
                }
            }
        }
        sign
    }

    proptest! {
        #[test]
        fn matches_bubble_sort(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
                               degrees in prop::collection::vec(-2i32..4, 6)) {
            prop_assert_eq!(koszul_sign(&perm, &degrees).unwrap(), bubble_sign(&perm, &degrees));
        }

        #[test]
        fn subset_sign_product(degrees in prop::collection::vec(-2i32..4, 1..7), pick in 0usize..64) {
            let k = degrees.len();
            let all: Vec<Vec<usize>> = subsets(k).collect();
            let i = &all[pick % all.len()];
            let ic = complement(i, k);
            let di: i32 = i.iter().map(|&x| degrees[x]).sum();
            let dc: i32 = ic.iter().map(|&x| degrees[x]).sum();
            prop_assert_eq!(subset_sign(i, &degrees) * subset_sign(&ic, &degrees), parity(is_odd(di * dc)));
            // ±^I is the sign of moving v_I to the front
            let order: Vec<usize> = i.iter().chain(ic.iter()).copied().collect();
            prop_assert_eq!(subset_sign(i, &degrees), koszul_sign(&order, &degrees).unwrap());
        }
    }
}
