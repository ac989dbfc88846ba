//! Set partitions, surjections and the factorial weights used by the partition sums.

use num::{BigInt, BigUint, One, Signed, Zero};

use crate::scalar::Rational;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-1)^(k-1) (k-1)!`, the block weight of the inverse cumulant bijection.
pub fn cumulant_weight(k: usize) -> Rational {
    assert!(k >= 1, "cumulant weight needs a non-empty block");
    let mag = factorial(k - 1);
    let signed = if k % 2 == 1 { mag } else { -mag };
    Rational::from_integer(signed)
}

/// Number of onto maps `[s] -> [t]`, by inclusion-exclusion.
pub fn surjection_count(s: usize, t: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for j in 0..=t {
        let term = binomial(t, j) * num::pow(BigInt::from(j), s);
        if (t - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(!acc.is_negative());
    acc.to_biguint().expect("surjection count is non-negative")
}

/// All ordered partitions of `0..k` into exactly `r` non-empty blocks, each block ascending.
///
/// Enumerated as surjections `[k] -> [r]`, so the count is `surjection_count(k, r)`.
pub fn ordered_partitions(k: usize, r: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if r == 0 || r > k {
        return out;
    }
    let mut assignment = vec![0usize; k];
    loop {
        let mut blocks = vec![Vec::new(); r];
        for (i, &b) in assignment.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            assignment[pos] += 1;
            if assignment[pos] < r {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Unordered set partitions of `0..k` (blocks ascending, blocks ordered by least element).
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, k, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, k, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    go(0, k, &mut Vec::new(), &mut out);
    out
}

/// Subsets of `0..k` as sorted index lists, in bitmask order.
pub fn subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << k)).map(move |mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn complement(subset: &[usize], k: usize) -> Vec<usize> {
    (0..k).filter(|i| !subset.contains(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_onto(s: usize, t: usize) -> u64 {
        let total = (t as u64).pow(s as u32);
        (0..total)
            .filter(|&code| {
                let mut hit = vec![false; t];
                let mut c = code;
                for _ in 0..s {
                    hit[(c % t as u64) as usize] = true;
                    c /= t as u64;
                }
                hit.iter().all(|&h| h)
            })
            .count() as u64
    }

    #[test]
    fn surjection_count_matches_enumeration() {
        assert_eq!(surjection_count(2, 2), BigUint::from(2u32));
        assert_eq!(surjection_count(3, 2), BigUint::from(6u32));
        assert_eq!(surjection_count(0, 0), BigUint::one());
        assert_eq!(surjection_count(3, 0), BigUint::zero());
        for s in 1..=6 {
            for t in 1..=5 {
                assert_eq!(surjection_count(s, t), BigUint::from(brute_onto(s, t)), "N({s},{t})");
            }
        }
    }

    #[test]
    fn ordered_partition_counts() {
        for k in 1..=5 {
            for r in 1..=k {
                let parts = ordered_partitions(k, r);
                assert_eq!(BigUint::from(parts.len()), surjection_count(k, r));
            }
        }
    }

    #[test]
    fn set_partitions_are_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(k).len(), b);
        }
    }

    #[test]
    fn weights() {
        assert_eq!(cumulant_weight(1), Rational::from_integer(1.into()));
        assert_eq!(cumulant_weight(2), Rational::from_integer((-1).into()));
        assert_eq!(cumulant_weight(3), Rational::from_integer(2.into()));
        assert_eq!(cumulant_weight(4), Rational::from_integer((-6).into()));
    }
}
