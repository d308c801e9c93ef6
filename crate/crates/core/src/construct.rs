//! Explicit systems: an m-cover that is not the union of two covers, and
//! the `m` copies of `0(1)` that meet the subset-count bound with equality.

use std::collections::BTreeSet;

use crate::cover::{CoverSystem, ResidueClass};
use crate::error::{Error, Result};

/// Parameters for the unsplittable m-cover built from distinct primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsplittableSpec {
    m: u64,
    primes: Vec<u64>,
    product: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl UnsplittableSpec {
    /// Requires `m >= 1`, distinct primes, and at least `2m - 1` of them.
    pub fn new(m: u64, primes: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::SpecViolation("m must be at least 1".into()));
        }
        let r = primes.len() as u64;
        if r < 2 * m - 1 {
            return Err(Error::SpecViolation(format!(
                "need at least 2m-1 = {} primes, got {r}",
                2 * m - 1
            )));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::SpecViolation(format!("{p} is not prime")));
        }
        if primes.iter().collect::<BTreeSet<_>>().len() != primes.len() {
            return Err(Error::SpecViolation("primes must be distinct".into()));
        }
        let product = primes
            .iter()
            .try_fold(1u64, |acc, &p| acc.checked_mul(p).filter(|&v| v <= i64::MAX as u64))
            .ok_or(Error::PeriodOverflow)?;
        Ok(UnsplittableSpec { m, primes, product })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `N`, the product of the primes.
    pub fn product(&self) -> u64 {
        self.product
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsplittableCover {
    pub spec: UnsplittableSpec,
    /// `0(p_1), ..., 0(p_r)` followed by `a_1(N), ..., a_n(N)`.
    pub system: CoverSystem,
    /// Residues mod `N` missed by the products of `m` or more primes,
    /// ascending, each repeated `m` times.
    pub a_list: Vec<u64>,
    /// Residues mod `N` divisible by some product of at least `m` of the primes.
    pub star_covered: BTreeSet<u64>,
    /// Exact covering multiplicity of `system`.
    pub multiplicity: u64,
}

/// Builds the m-cover `{0(p_s)} ∪ {a_t(N)}`.
pub fn build_unsplittable(spec: &UnsplittableSpec) -> Result<UnsplittableCover> {
    let r = spec.primes.len();
    let n = spec.product;
    let mut star_covered = BTreeSet::new();
    for mask in 0u64..(1 << r) {
        if (mask.count_ones() as u64) < spec.m {
            continue;
        }
        let step: u64 = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| spec.primes[i]).product();
        star_covered.extend((0..n).step_by(step as usize));
    }
    let a_list: Vec<u64> = (0..n)
        .filter(|x| !star_covered.contains(x))
        .flat_map(|x| std::iter::repeat_n(x, spec.m as usize))
        .collect();

    let mut classes: Vec<ResidueClass> = spec
        .primes
        .iter()
        .map(|&p| ResidueClass::new(0, p as i64))
        .collect::<Result<_>>()?;
    for &a in &a_list {
        classes.push(ResidueClass::new(a as i64, n as i64)?);
    }
    let system = CoverSystem::new(classes);
    let multiplicity = system.covering_multiplicity()?;
    if multiplicity < spec.m {
        return Err(Error::InvariantViolation(format!(
            "constructed system has multiplicity {multiplicity} < {}",
            spec.m
        )));
    }
    Ok(UnsplittableCover {
        spec: spec.clone(),
        system,
        a_list,
        star_covered,
        multiplicity,
    })
}

/// One bipartition `(I_1, I_2)` of the prime indices, `|I_1| <= |I_2|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    /// 0-based prime indices on the smaller side.
    pub smaller: Vec<usize>,
    pub larger: Vec<usize>,
    /// Product of the primes on the larger side.
    pub witness: u64,
    /// `witness mod N` lies in the starred set, so no `a_t(N)` contains it.
    pub avoids_a_list: bool,
    /// No prime on the smaller side divides `witness`.
    pub avoids_smaller_side: bool,
}

impl PartitionWitness {
    pub fn certified(&self) -> bool {
        self.avoids_a_list && self.avoids_smaller_side
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsplittabilityCertificate {
    pub partitions: Vec<PartitionWitness>,
}

impl UnsplittabilityCertificate {
    pub fn passed(&self) -> bool {
        self.partitions.iter().all(PartitionWitness::certified)
    }

    pub fn first_failure(&self) -> Option<&PartitionWitness> {
        self.partitions.iter().find(|p| !p.certified())
    }
}

/// Checks the product-of-primes witness for each of the `2^r` ways to split
/// the prime classes.
///
/// Whatever way the `a_t(N)` classes are distributed, the side holding the
/// fewer primes misses the witness, so no split of the whole system yields
/// two covers.
pub fn check_unsplittable(out: &UnsplittableCover) -> UnsplittabilityCertificate {
    let primes = out.spec.primes();
    let r = primes.len();
    let n = out.spec.product();
    let a_set: BTreeSet<u64> = out.a_list.iter().copied().collect();
    let partitions = (0u64..(1 << r))
        .map(|mask| {
            let first: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let second: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 0).collect();
            let first_is_smaller = match first.len().cmp(&second.len()) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => first.first() == Some(&0),
            };
            let (smaller, larger) = if first_is_smaller {
                (first, second)
            } else {
                (second, first)
            };
            let witness: u64 = larger.iter().map(|&i| primes[i]).product();
            let residue = witness % n;
            PartitionWitness {
                avoids_a_list: out.star_covered.contains(&residue) && !a_set.contains(&residue),
                avoids_smaller_side: smaller.iter().all(|&i| !witness.is_multiple_of(primes[i])),
                smaller,
                larger,
                witness,
            }
        })
        .collect();
    UnsplittabilityCertificate { partitions }
}

/// Exhaustively searches for a split of `sys` into two 1-covers.
///
/// Returns the 0-based indices of one side when such a split exists. Only
/// feasible for small systems; `max_classes` bounds the search.
pub fn find_cover_split(sys: &CoverSystem, max_classes: usize) -> Result<Option<Vec<usize>>> {
    let k = sys.len();
    if k > max_classes || k >= 64 {
        return Err(Error::BruteForceCap { k, cap: max_classes });
    }
    if k < 2 {
        return Ok(None);
    }
    // class 0 always on the first side
    for mask in 0u64..(1 << (k - 1)) {
        let side_of = |s: usize| if s == 0 { 0 } else { (mask >> (s - 1)) & 1 };
        let side = |bit: u64| -> CoverSystem {
            CoverSystem::new(
                (0..k)
                    .filter(|&s| side_of(s) == bit)
                    .map(|s| sys.classes()[s])
                    .collect(),
            )
        };
        let (left, right) = (side(0), side(1));
        if !right.is_empty() && left.is_m_cover(1)? && right.is_m_cover(1)? {
            return Ok(Some((0..k).filter(|&s| side_of(s) == 0).collect()));
        }
    }
    Ok(None)
}

/// `m` copies of `0(1)` with unit weights.
pub fn sharpness_example(m: u64) -> Result<CoverSystem> {
    if m == 0 {
        return Err(Error::SpecViolation("m must be at least 1".into()));
    }
    CoverSystem::from_pairs(&vec![(0, 1); m as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::spectrum::{pow2, spectrum_dp, verify_theorem11};
    use num::BigUint;

    fn build(m: u64, primes: &[u64]) -> UnsplittableCover {
        build_unsplittable(&UnsplittableSpec::new(m, primes.to_vec()).unwrap()).unwrap()
    }

    /// Residues divisible by at least `m` of the primes, by direct counting.
    fn star_oracle(m: u64, primes: &[u64]) -> BTreeSet<u64> {
        let n: u64 = primes.iter().product();
        (0..n)
            .filter(|x| primes.iter().filter(|&&p| x % p == 0).count() as u64 >= m)
            .collect()
    }

    #[test]
    fn example_two_three_five() {
        let out = build(2, &[2, 3, 5]);
        assert_eq!(out.spec.product(), 30);
        assert_eq!(out.star_covered, [0, 6, 10, 12, 15, 18, 20, 24].into_iter().collect());
        assert_eq!(out.a_list.len(), 44);
        assert_eq!(out.system.len(), 47);
        assert_eq!(out.multiplicity, 2);
        assert_eq!(&out.a_list[..4], &[1, 1, 2, 2]);
    }

    #[test]
    fn example_single_prime() {
        let out = build(1, &[2]);
        assert_eq!(out.system, CoverSystem::from_pairs(&[(0, 2), (1, 2)]).unwrap());
    }

    #[test]
    fn spec_violations() {
        assert!(matches!(
            UnsplittableSpec::new(2, vec![2, 3]),
            Err(Error::SpecViolation(_))
        ));
        assert!(matches!(
            UnsplittableSpec::new(1, vec![4]),
            Err(Error::SpecViolation(_))
        ));
        assert!(matches!(
            UnsplittableSpec::new(1, vec![3, 3]),
            Err(Error::SpecViolation(_))
        ));
        assert!(matches!(
            UnsplittableSpec::new(1, vec![1]),
            Err(Error::SpecViolation(_))
        ));
        assert!(matches!(
            UnsplittableSpec::new(0, vec![2]),
            Err(Error::SpecViolation(_))
        ));
    }

    #[test]
    fn star_set_matches_divisor_count() {
        for (m, primes) in [
            (1, vec![2]),
            (1, vec![2, 3]),
            (2, vec![2, 3, 5]),
            (2, vec![3, 5, 7]),
            (3, vec![2, 3, 5, 7, 11]),
        ] {
            let out = build(m, &primes);
            assert_eq!(out.star_covered, star_oracle(m, &primes));
            assert!(out.a_list.iter().all(|a| !out.star_covered.contains(a)));
        }
    }

    #[test]
    fn certificate_two_three_five() {
        let cert = check_unsplittable(&build(2, &[2, 3, 5]));
        assert_eq!(cert.partitions.len(), 8);
        assert!(cert.passed());
        let witnesses: BTreeSet<u64> = cert.partitions.iter().map(|p| p.witness).collect();
        assert!(witnesses.is_subset(&[6, 10, 15, 30].into_iter().collect()));
    }

    #[test]
    fn certificate_single_prime() {
        let cert = check_unsplittable(&build(1, &[2]));
        assert!(cert.passed());
        assert!(cert.partitions.iter().all(|p| p.smaller.is_empty() && p.witness == 2));
    }

    #[test]
    fn tie_puts_first_index_on_smaller_side() {
        let cert = check_unsplittable(&build(1, &[2, 3]));
        for p in &cert.partitions {
            if p.smaller.len() == p.larger.len() {
                assert_eq!(p.smaller, vec![0]);
            }
        }
        assert!(cert.passed());
    }

    #[test]
    fn exhaustive_split_agrees_with_certificate() {
        for primes in [vec![2], vec![2, 3]] {
            let out = build(1, &primes);
            assert!(check_unsplittable(&out).passed());
            assert_eq!(find_cover_split(&out.system, 20).unwrap(), None);
        }
        let doubled = CoverSystem::from_pairs(&[(0, 1), (0, 1)]).unwrap();
        assert_eq!(find_cover_split(&doubled, 20).unwrap(), Some(vec![0]));
        let two_halves = CoverSystem::from_pairs(&[(0, 2), (1, 2), (0, 1)]).unwrap();
        assert_eq!(find_cover_split(&two_halves, 20).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn sharpness_examples() {
        let s = sharpness_example(3).unwrap();
        assert_eq!(
            spectrum_dp(&s).unwrap().counts().iter().collect::<Vec<_>>(),
            vec![(&0, &BigUint::from(8u32))]
        );
        assert_eq!(
            spectrum_dp(&sharpness_example(1).unwrap()).unwrap().count(0),
            BigUint::from(2u32)
        );
        for m in 1..=10 {
            let r = verify_theorem11(&sharpness_example(m).unwrap()).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.min_nonzero, Some((0, pow2(m))));
        }
        assert!(sharpness_example(0).is_err());
    }
}
