#![allow(dead_code)]

use std::collections::BTreeMap;

use coverkit::field::DEFAULT_COSET_CAP;
use coverkit::{CoverSystem, NFCoverSystem, NFElement, NFResidueClass, NumberField, ResidueClass};
use num::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CLASSIC: [(i64, i64); 5] = [(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random m-cover with at most 14 classes and moduli at most 12.
///
/// Full residue blocks `{0(n), …, n−1(n)}` and shifted copies of the classic
/// cover guarantee multiplicity at least one; the rest are random classes.
pub fn random_cover(rng: &mut impl Rng) -> CoverSystem {
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    loop {
        let block: Vec<(i64, i64)> = if rng.gen_bool(0.5) {
            let n = rng.gen_range(1..=6);
            (0..n).map(|a| (a, n)).collect()
        } else {
            let shift = rng.gen_range(0..12);
            CLASSIC.iter().map(|&(a, n)| ((a + shift) % n, n)).collect()
        };
        if pairs.len() + block.len() > 14 {
            if pairs.is_empty() {
                continue;
            }
            break;
        }
        pairs.extend(block);
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let extras = rng.gen_range(0..=(14 - pairs.len()).min(4));
    for _ in 0..extras {
        let n = rng.gen_range(1..=12);
        pairs.push((rng.gen_range(0..n), n));
    }
    let classes = pairs.iter().map(|&(a, n)| ResidueClass::new(a, n).unwrap()).collect();
    let weights = (0..pairs.len()).map(|_| rng.gen_range(-5..=5)).collect();
    CoverSystem::with_weights(classes, weights).unwrap()
}

/// Direct pointwise covering count.
pub fn coverage_oracle(pairs: &[(i64, i64)], x: i64) -> u64 {
    pairs.iter().filter(|&&(a, n)| (x - a).rem_euclid(n) == 0).count() as u64
}

/// Subset-sum counts by enumeration over integer numerators `Σ m_s·N/n_s mod N`.
pub fn spectrum_oracle(sys: &CoverSystem) -> BTreeMap<u64, BigUint> {
    let moduli: Vec<i128> = sys.classes().iter().map(|c| c.modulus() as i128).collect();
    let n = moduli.iter().fold(1i128, |acc, &m| num::integer::lcm(acc, m));
    let offsets: Vec<i128> = (0..sys.len())
        .map(|s| sys.weight(s) as i128 * (n / moduli[s]))
        .collect();
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    for mask in 0u64..(1u64 << offsets.len()) {
        let total: i128 = offsets
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, o)| o)
            .sum();
        *counts.entry(total.rem_euclid(n) as u64).or_default() += 1u32;
    }
    counts
}

pub fn gaussian() -> NumberField {
    NumberField::new(&[1, 0, 1]).unwrap()
}

pub fn test_fields() -> Vec<NumberField> {
    [
        vec![1, 0, 1],
        vec![-2, 0, 1],
        vec![-1, -1, 1],
        vec![-2, 0, 0, 1],
        vec![1, 1, 0, 1],
    ]
    .iter()
    .map(|c| NumberField::new(c).unwrap())
    .collect()
}

pub fn int_element(field: &NumberField, rng: &mut impl Rng, bound: i64) -> NFElement {
    let coords: Vec<i64> = (0..field.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    field.integral_element(&coords).unwrap()
}

/// Nonzero integral element whose norm index is at most `max_norm`.
pub fn small_modulus(field: &NumberField, rng: &mut impl Rng, max_norm: u64) -> (NFElement, u64) {
    loop {
        let beta = int_element(field, rng, 1);
        if beta.is_zero() {
            continue;
        }
        let norm = u64::try_from(field.norm_index(&beta).unwrap()).unwrap();
        if norm <= max_norm {
            return (beta, norm);
        }
    }
}

/// Product of norm indices allowed across one random NF system.
pub const NORM_BUDGET: u64 = 4096;

/// Random NF cover with at most 12 classes built from full coset blocks.
pub fn random_nf_cover(field: &NumberField, rng: &mut impl Rng) -> NFCoverSystem {
    let mut classes: Vec<NFResidueClass> = Vec::new();
    let mut budget = NORM_BUDGET;
    loop {
        let (beta, norm) = small_modulus(field, rng, 4);
        let reps = field.coset_reps(&beta, DEFAULT_COSET_CAP).unwrap();
        let cost = norm.pow(reps.len() as u32);
        if classes.len() + reps.len() > 12 || cost > budget {
            if classes.is_empty() {
                continue;
            }
            break;
        }
        budget /= cost;
        for alpha in reps {
            // shifting a representative by a multiple of beta keeps the block a partition
            let shifted = alpha.add(&field.mul(&beta, &int_element(field, rng, 2)));
            classes.push(NFResidueClass::new(shifted, beta.clone()).unwrap());
        }
        if rng.gen_bool(0.5) {
            break;
        }
    }
    for _ in 0..rng.gen_range(0..=(12 - classes.len()).min(2)) {
        let (beta, norm) = small_modulus(field, rng, 3);
        if norm > budget {
            continue;
        }
        budget /= norm;
        classes.push(NFResidueClass::new(int_element(field, rng, 2), beta).unwrap());
    }
    let omegas = (0..classes.len()).map(|_| int_element(field, rng, 2)).collect();
    NFCoverSystem::new(field.clone(), classes, Some(omegas)).unwrap()
}
