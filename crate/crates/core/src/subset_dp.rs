//! Counting subset sums by iterated shift-add.
//!
//! Every routine here counts, for each reachable total, how many of the
//! `2^k` subsets of the offsets produce it. Counts fit in `u128` whenever
//! `k < 128`, so that path is used and widened to `BigUint` at the end.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::ops::AddAssign;

use num::{BigUint, One, Zero};

/// Tables at most this long are stored densely.
pub(crate) const DENSE_LIMIT: u64 = 1 << 20;

trait Tally: Clone + Zero + One + for<'a> AddAssign<&'a Self> + Into<BigUint> {}

impl Tally for u128 {}
impl Tally for BigUint {}

fn fits_u128(k: usize) -> bool {
    k < 128
}

/// Counts of `sum(subset) mod modulus` for every subset of `offsets`.
///
/// Offsets must already be reduced into `[0, modulus)`.
pub(crate) fn modular_counts(offsets: &[u64], modulus: u64) -> BTreeMap<u64, BigUint> {
    debug_assert!(offsets.iter().all(|&c| c < modulus));
    if fits_u128(offsets.len()) {
        modular_counts_with::<u128>(offsets, modulus)
    } else {
        modular_counts_with::<BigUint>(offsets, modulus)
    }
}

fn modular_counts_with<T: Tally>(offsets: &[u64], modulus: u64) -> BTreeMap<u64, BigUint> {
    if modulus <= DENSE_LIMIT {
        let n = modulus as usize;
        let mut counts = vec![T::zero(); n];
        counts[0] = T::one();
        for &c in offsets {
            let c = c as usize;
            let prev = counts.clone();
            // counts[r] += prev[(r - c) mod n]
            for (r, slot) in counts.iter_mut().enumerate() {
                let src = if r >= c { r - c } else { r + n - c };
                *slot += &prev[src];
            }
        }
        dense_to_map(counts)
    } else {
        let mut counts: HashMap<u64, T> = HashMap::from([(0, T::one())]);
        for &c in offsets {
            let prev: Vec<(u64, T)> = counts.iter().map(|(k, v)| (*k, v.clone())).collect();
            for (r, v) in prev {
                let target = ((r as u128 + c as u128) % modulus as u128) as u64;
                *counts.entry(target).or_insert_with(T::zero) += &v;
            }
        }
        sparse_to_map(counts)
    }
}

/// Counts of the plain (non-modular) subset sum of `offsets`.
pub(crate) fn linear_counts(offsets: &[u64]) -> BTreeMap<u64, BigUint> {
    if fits_u128(offsets.len()) {
        linear_counts_with::<u128>(offsets)
    } else {
        linear_counts_with::<BigUint>(offsets)
    }
}

fn linear_counts_with<T: Tally>(offsets: &[u64]) -> BTreeMap<u64, BigUint> {
    let total: u128 = offsets.iter().map(|&c| c as u128).sum();
    if total < DENSE_LIMIT as u128 {
        let mut counts = vec![T::zero(); total as usize + 1];
        counts[0] = T::one();
        let mut reach = 0usize;
        for &c in offsets {
            let c = c as usize;
            // descending so each subset uses the offset at most once
            for v in (0..=reach).rev() {
                if !counts[v].is_zero() {
                    let add = counts[v].clone();
                    counts[v + c] += &add;
                }
            }
            reach += c;
        }
        dense_to_map(counts)
    } else {
        let mut counts: HashMap<u64, T> = HashMap::from([(0, T::one())]);
        for &c in offsets {
            let prev: Vec<(u64, T)> = counts.iter().map(|(k, v)| (*k, v.clone())).collect();
            for (v, n) in prev {
                *counts.entry(v + c).or_insert_with(T::zero) += &n;
            }
        }
        sparse_to_map(counts)
    }
}

/// Counts of `sum(subset)` in `(Z/modulus)^d`, offsets given as reduced tuples.
pub(crate) fn tuple_counts(offsets: &[Vec<u64>], modulus: u64) -> BTreeMap<Vec<u64>, BigUint> {
    if fits_u128(offsets.len()) {
        tuple_counts_with::<u128>(offsets, modulus)
    } else {
        tuple_counts_with::<BigUint>(offsets, modulus)
    }
}

fn tuple_counts_with<T: Tally>(offsets: &[Vec<u64>], modulus: u64) -> BTreeMap<Vec<u64>, BigUint> {
    let dim = offsets.first().map_or(0, Vec::len);
    let mut counts: HashMap<Vec<u64>, T> = HashMap::from([(vec![0; dim], T::one())]);
    for c in offsets {
        let prev: Vec<(Vec<u64>, T)> = counts.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (key, v) in prev {
            let target: Vec<u64> = key
                .iter()
                .zip(c)
                .map(|(&a, &b)| ((a as u128 + b as u128) % modulus as u128) as u64)
                .collect();
            *counts.entry(target).or_insert_with(T::zero) += &v;
        }
    }
    sparse_to_map(counts)
}

fn dense_to_map<T: Tally>(counts: Vec<T>) -> BTreeMap<u64, BigUint> {
    counts
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(r, v)| (r as u64, v.into()))
        .collect()
}

fn sparse_to_map<K: Ord + Hash, T: Tally>(counts: HashMap<K, T>) -> BTreeMap<K, BigUint> {
    counts
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, v.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate_mod(offsets: &[u64], modulus: u64) -> BTreeMap<u64, BigUint> {
        let mut out = BTreeMap::new();
        for mask in 0u64..(1 << offsets.len()) {
            let s: u64 = (0..offsets.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| offsets[i])
                .sum::<u64>()
                % modulus;
            *out.entry(s).or_insert_with(BigUint::zero) += 1u32;
        }
        out
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let offsets = [3u64, 5, 0, 7, 7, 1];
        let dense = modular_counts(&offsets, 11);
        assert_eq!(dense, enumerate_mod(&offsets, 11));
        let big_mod = DENSE_LIMIT + 3;
        let wide = [big_mod - 1, 2, 5, big_mod - 2];
        assert_eq!(modular_counts(&wide, big_mod), enumerate_mod(&wide, big_mod));
    }

    #[test]
    fn bigint_path_for_many_offsets() {
        let offsets = vec![0u64; 130];
        let counts = modular_counts(&offsets, 1);
        assert_eq!(counts[&0], BigUint::one() << 130);
        let lin = linear_counts(&vec![1u64; 130]);
        assert_eq!(lin.len(), 131);
        assert_eq!(lin.values().sum::<BigUint>(), BigUint::one() << 130);
    }

    #[test]
    fn linear_counts_small() {
        let lin = linear_counts(&[1, 1]);
        let expected: BTreeMap<u64, BigUint> = [(0, 1u32), (1, 2), (2, 1)]
            .into_iter()
            .map(|(k, v)| (k, BigUint::from(v)))
            .collect();
        assert_eq!(lin, expected);
        let sparse = linear_counts(&[DENSE_LIMIT, 1]);
        assert_eq!(sparse.len(), 4);
    }

    #[test]
    fn tuple_counts_small() {
        let counts = tuple_counts(&[vec![1, 1], vec![1, 1]], 2);
        assert_eq!(counts.len(), 2);
        assert_eq!(counts[&vec![0, 0]], BigUint::from(2u32));
        assert_eq!(counts[&vec![1, 1]], BigUint::from(2u32));
    }
}
