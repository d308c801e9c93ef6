//! Fractional-part spectra of weighted subset sums.
//!
//! For a system `{a_s(n_s)}` with weights `m_s`, every subset `I` of the
//! class indices has a value `{sum_{s in I} m_s/n_s}` in `[0, 1)`. With
//! `N = lcm(n_s)` each such value is `r/N` for an integer residue `r`, so a
//! spectrum is a count table over `Z/N`.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigUint, One, ToPrimitive, Zero};

use crate::arith::{frac_part, Rational};
use crate::cover::CoverSystem;
use crate::error::{Error, Result};
use crate::report::Verdict;
use crate::subset_dp::{linear_counts, modular_counts};

/// Default largest `k` accepted by [`spectrum_bruteforce`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// Subset counts per fractional-part class.
///
/// `count(r)` is the number of subsets `I` with `{sum m_s/n_s} = r/N`. Only
/// nonzero counts are stored, so the key set is the support `S(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    modulus: u64,
    k: usize,
    counts: BTreeMap<u64, BigUint>,
}

impl SpectrumReport {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &BTreeMap<u64, BigUint> {
        &self.counts
    }

    pub fn count(&self, residue: u64) -> BigUint {
        self.counts.get(&residue).cloned().unwrap_or_default()
    }

    /// `|S(A)|`, the number of distinct fractional parts.
    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest nonzero count and the first residue attaining it.
    pub fn min_nonzero(&self) -> Option<(u64, &BigUint)> {
        self.counts
            .iter()
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(b.0)))
            .map(|(r, c)| (*r, c))
    }

    /// The residue `r` with `theta = r/N`, if `theta` is such a value in `[0, 1)`.
    pub fn residue_of(&self, theta: &Rational) -> Option<u64> {
        if theta < &Rational::zero() || theta >= &Rational::one() {
            return None;
        }
        let scaled = theta * Rational::from_integer(BigInt::from(self.modulus));
        if !scaled.is_integer() {
            return None;
        }
        scaled.to_integer().to_u64()
    }

    /// `|I_A(theta)|`.
    pub fn count_at(&self, theta: &Rational) -> BigUint {
        self.residue_of(theta).map(|r| self.count(r)).unwrap_or_default()
    }

    /// Whether `theta` lies in `S(A)`.
    pub fn contains(&self, theta: &Rational) -> bool {
        self.residue_of(theta).is_some_and(|r| self.counts.contains_key(&r))
    }

    pub fn value(&self, residue: u64) -> Rational {
        Rational::new(BigInt::from(residue), BigInt::from(self.modulus))
    }
}

/// Subset counts by exact total `v/N` (integer part included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedSpectrumReport {
    modulus: u64,
    k: usize,
    counts: BTreeMap<u64, BigUint>,
}

impl ExtendedSpectrumReport {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of classes that took part in the subsets.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &BTreeMap<u64, BigUint> {
        &self.counts
    }

    pub fn count(&self, scaled_total: u64) -> BigUint {
        self.counts.get(&scaled_total).cloned().unwrap_or_default()
    }

    /// Folds totals modulo `N`, recovering the fractional-part counts.
    pub fn marginal(&self) -> BTreeMap<u64, BigUint> {
        let mut out: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (v, c) in &self.counts {
            *out.entry(v % self.modulus).or_default() += c;
        }
        out
    }

    /// Entries `(integer part, count)` for totals with fractional part `residue/N`.
    pub fn fiber(&self, residue: u64) -> Vec<(u64, BigUint)> {
        self.counts
            .iter()
            .filter(|(v, _)| *v % self.modulus == residue)
            .map(|(v, c)| (v / self.modulus, c.clone()))
            .collect()
    }
}

fn weighted_offsets(sys: &CoverSystem, modulus: u64) -> Vec<u64> {
    sys.classes()
        .iter()
        .enumerate()
        .map(|(s, class)| {
            let step = (modulus / class.modulus()) as i128;
            (sys.weight(s) as i128 * step).rem_euclid(modulus as i128) as u64
        })
        .collect()
}

/// Spectrum by shift-add over `Z/N`, `O(kN)` count additions.
pub fn spectrum_dp(sys: &CoverSystem) -> Result<SpectrumReport> {
    let modulus = sys.period()?;
    let offsets = weighted_offsets(sys, modulus);
    Ok(SpectrumReport {
        modulus,
        k: sys.len(),
        counts: modular_counts(&offsets, modulus),
    })
}

/// Spectrum by enumerating all `2^k` subsets with exact rational sums.
///
/// Kept independent of [`spectrum_dp`] so the two can be compared.
pub fn spectrum_bruteforce(sys: &CoverSystem, cap: usize) -> Result<SpectrumReport> {
    let k = sys.len();
    if k > cap || k >= 64 {
        return Err(Error::BruteForceCap { k, cap });
    }
    let modulus = sys.period()?;
    let terms: Vec<Rational> = sys
        .classes()
        .iter()
        .enumerate()
        .map(|(s, c)| Rational::new(BigInt::from(sys.weight(s)), BigInt::from(c.modulus())))
        .collect();
    let scale = Rational::from_integer(BigInt::from(modulus));
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    let mut record = |sum: &Rational| -> Result<()> {
        let scaled = frac_part(sum) * &scale;
        let r = scaled
            .is_integer()
            .then(|| scaled.to_integer().to_u64())
            .flatten()
            .ok_or_else(|| Error::InvariantViolation(format!("{sum} has denominator not dividing {modulus}")))?;
        *counts.entry(r).or_default() += 1u32;
        Ok(())
    };
    // Gray-code walk: consecutive subsets differ in exactly one class.
    let mut sum = Rational::zero();
    record(&sum)?;
    let mut in_subset = vec![false; k];
    for step in 1u64..(1u64 << k) {
        let s = step.trailing_zeros() as usize;
        if in_subset[s] {
            sum -= &terms[s];
        } else {
            sum += &terms[s];
        }
        in_subset[s] = !in_subset[s];
        record(&sum)?;
    }
    Ok(SpectrumReport { modulus, k, counts })
}

/// Counts of exact totals `N * sum_{s in I} 1/n_s`, optionally leaving one class out.
///
/// `N` is the lcm of all moduli of `sys`, including an excluded class.
pub fn extended_spectrum(sys: &CoverSystem, exclude: Option<usize>) -> Result<ExtendedSpectrumReport> {
    if let Some(s) = sys.first_nonunit_weight() {
        return Err(Error::NonUnitWeights(s));
    }
    if let Some(t) = exclude {
        if t >= sys.len() {
            return Err(Error::IndexOutOfRange {
                index: t,
                len: sys.len(),
            });
        }
    }
    let modulus = sys.period()?;
    let offsets: Vec<u64> = sys
        .classes()
        .iter()
        .enumerate()
        .filter(|(s, _)| Some(*s) != exclude)
        .map(|(_, c)| modulus / c.modulus())
        .collect();
    Ok(ExtendedSpectrumReport {
        modulus,
        k: offsets.len(),
        counts: linear_counts(&offsets),
    })
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem11Report {
    pub multiplicity: u64,
    pub modulus: u64,
    pub k: usize,
    /// `2^m`
    pub bound: BigUint,
    pub min_nonzero: Option<(u64, BigUint)>,
    /// Residues whose nonzero count is below the bound.
    pub offending: Vec<u64>,
    pub verdict: Verdict,
}

/// Every nonempty `I_A(theta)` has at least `2^m` members, `m` the exact multiplicity.
pub fn verify_theorem11(sys: &CoverSystem) -> Result<Theorem11Report> {
    let spectrum = spectrum_dp(sys)?;
    check_theorem11(sys.covering_multiplicity()?, &spectrum)
}

/// Evaluates the subset-count bound against an already computed spectrum.
pub fn check_theorem11(multiplicity: u64, spectrum: &SpectrumReport) -> Result<Theorem11Report> {
    let bound = pow2(multiplicity);
    let offending: Vec<u64> = spectrum
        .counts()
        .iter()
        .filter(|(_, c)| **c < bound)
        .map(|(r, _)| *r)
        .collect();
    let verdict = if multiplicity == 0 {
        Verdict::NotApplicable
    } else {
        Verdict::from_check(offending.is_empty())
    };
    Ok(Theorem11Report {
        multiplicity,
        modulus: spectrum.modulus(),
        k: spectrum.k(),
        bound,
        min_nonzero: spectrum.min_nonzero().map(|(r, c)| (r, c.clone())),
        offending,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary11Report {
    pub multiplicity: u64,
    pub k: usize,
    pub support_size: usize,
    /// `2^(k-m)`
    pub bound: BigUint,
    pub verdict: Verdict,
}

/// `|S(A)| <= 2^(k-m)`.
pub fn verify_corollary11(sys: &CoverSystem) -> Result<Corollary11Report> {
    let spectrum = spectrum_dp(sys)?;
    check_corollary11(sys.covering_multiplicity()?, &spectrum)
}

pub fn check_corollary11(multiplicity: u64, spectrum: &SpectrumReport) -> Result<Corollary11Report> {
    let k = spectrum.k();
    if multiplicity > k as u64 {
        return Err(Error::InvariantViolation(format!(
            "multiplicity {multiplicity} exceeds class count {k}"
        )));
    }
    let bound = pow2(k as u64 - multiplicity);
    let support_size = spectrum.support_size();
    let verdict = if multiplicity == 0 {
        Verdict::NotApplicable
    } else {
        Verdict::from_check(BigUint::from(support_size) <= bound)
    };
    Ok(Corollary11Report {
        multiplicity,
        k,
        support_size,
        bound,
        verdict,
    })
}

/// Hypotheses for the last-class refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary12Hypotheses {
    pub multiplicity: u64,
    /// Multiplicity after dropping the last class; must be below `multiplicity`.
    pub truncated_multiplicity: u64,
    pub last_modulus: u64,
    /// Whether `w_A` is periodic modulo the last modulus.
    pub periodic: bool,
}

impl Corollary12Hypotheses {
    pub fn hold(&self) -> bool {
        self.multiplicity >= 1 && self.truncated_multiplicity < self.multiplicity && self.periodic
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary12Row {
    /// Target fractional part is `residue / n_k`.
    pub residue: u64,
    pub count: BigUint,
    /// Distinct integer parts among the matching subsets, ascending.
    pub integer_parts: Vec<u64>,
    pub count_ok: bool,
    pub diversity_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corollary12Report {
    pub hypotheses: Option<Corollary12Hypotheses>,
    /// `2^(m-1)`
    pub bound: BigUint,
    pub rows: Vec<Corollary12Row>,
    pub verdict: Verdict,
}

fn unit_weights(sys: &CoverSystem) -> Result<()> {
    match sys.first_nonunit_weight() {
        Some(s) => Err(Error::NonUnitWeights(s)),
        None => Ok(()),
    }
}

/// For every `r` in `[0, n_k)`, at least `2^(m-1)` subsets of the first `k-1`
/// classes have `{sum 1/n_s} = r/n_k`, and their integer parts take at least
/// `m` distinct values.
pub fn verify_corollary12(sys: &CoverSystem) -> Result<Corollary12Report> {
    unit_weights(sys)?;
    let not_applicable = |hypotheses| Corollary12Report {
        hypotheses,
        bound: BigUint::zero(),
        rows: Vec::new(),
        verdict: Verdict::NotApplicable,
    };
    let Some(last) = sys.len().checked_sub(1) else {
        return Ok(not_applicable(None));
    };
    let multiplicity = sys.covering_multiplicity()?;
    let last_modulus = sys.classes()[last].modulus();
    let hypotheses = Corollary12Hypotheses {
        multiplicity,
        truncated_multiplicity: sys.drop_class(last)?.covering_multiplicity()?,
        last_modulus,
        periodic: sys.is_periodic_mod(last_modulus)?,
    };
    if !hypotheses.hold() {
        return Ok(not_applicable(Some(hypotheses)));
    }

    let extended = extended_spectrum(sys, Some(last))?;
    let step = extended.modulus() / last_modulus;
    let bound = pow2(multiplicity - 1);
    let rows: Vec<Corollary12Row> = (0..last_modulus)
        .map(|r| {
            let fiber = extended.fiber(r * step);
            let count: BigUint = fiber.iter().map(|(_, c)| c).sum();
            let integer_parts: Vec<u64> = fiber
                .iter()
                .map(|(q, _)| *q)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            Corollary12Row {
                residue: r,
                count_ok: count >= bound,
                diversity_ok: integer_parts.len() as u64 >= multiplicity,
                count,
                integer_parts,
            }
        })
        .collect();
    let verdict = Verdict::from_check(rows.iter().all(|row| row.count_ok && row.diversity_ok));
    Ok(Corollary12Report {
        hypotheses: Some(hypotheses),
        bound,
        rows,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remark13Row {
    pub residue: u64,
    pub integer_part: u64,
    pub count: BigUint,
    /// `C(m-1, integer_part)`
    pub bound: BigUint,
}

impl Remark13Row {
    pub fn ok(&self) -> bool {
        self.count >= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remark13Report {
    /// `m` when the system is an exact m-cover.
    pub exact_multiplicity: Option<u64>,
    pub last_modulus: Option<u64>,
    pub rows: Vec<Remark13Row>,
    pub verdict: Verdict,
}

/// For an exact m-cover: at least `C(m-1, n)` subsets of the first `k-1`
/// classes have `sum 1/n_s = n + r/n_k`, for all `n < m` and `r < n_k`.
pub fn verify_remark13(sys: &CoverSystem) -> Result<Remark13Report> {
    unit_weights(sys)?;
    let exact = sys.is_exact_cover()?.filter(|&m| m >= 1);
    let (Some(m), Some(last)) = (exact, sys.len().checked_sub(1)) else {
        return Ok(Remark13Report {
            exact_multiplicity: exact,
            last_modulus: None,
            rows: Vec::new(),
            verdict: Verdict::NotApplicable,
        });
    };
    let last_modulus = sys.classes()[last].modulus();
    let extended = extended_spectrum(sys, Some(last))?;
    let step = extended.modulus() / last_modulus;
    let mut rows = Vec::new();
    for r in 0..last_modulus {
        for n in 0..m {
            let scaled = (n * last_modulus + r) * step;
            rows.push(Remark13Row {
                residue: r,
                integer_part: n,
                count: extended.count(scaled),
                bound: binomial(m - 1, n),
            });
        }
    }
    let verdict = Verdict::from_check(rows.iter().all(Remark13Row::ok));
    Ok(Remark13Report {
        exact_multiplicity: Some(m),
        last_modulus: Some(last_modulus),
        rows,
        verdict,
    })
}

/// A class whose removal keeps both `theta` and `{theta - m_t/n_t}` reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma21Witness {
    /// 0-based index `t` of the removed class.
    pub index: usize,
    pub theta: Rational,
    /// `{theta - m_t/n_t}`
    pub shifted: Rational,
}

/// Finds `t` with `theta` and `{theta - m_t/n_t}` both in `S(A_t)`.
pub fn lemma21_witness(sys: &CoverSystem, theta: &Rational) -> Result<Lemma21Witness> {
    let (full, reduced) = lemma21_tables(sys)?;
    if !full.contains(theta) {
        return Err(Error::NotInSpectrum(theta.to_string()));
    }
    find_witness(sys, &reduced, theta)
}

/// [`lemma21_witness`] for every `theta` in `S(A)`, in ascending order.
pub fn lemma21_witnesses(sys: &CoverSystem) -> Result<Vec<Lemma21Witness>> {
    let (full, reduced) = lemma21_tables(sys)?;
    full.counts()
        .keys()
        .map(|&r| find_witness(sys, &reduced, &full.value(r)))
        .collect()
}

fn lemma21_tables(sys: &CoverSystem) -> Result<(SpectrumReport, Vec<SpectrumReport>)> {
    if sys.is_empty() || !sys.is_m_cover(1)? {
        return Err(Error::SpecViolation("system is not a 1-cover".into()));
    }
    let full = spectrum_dp(sys)?;
    let reduced = (0..sys.len())
        .map(|t| spectrum_dp(&sys.drop_class(t)?))
        .collect::<Result<_>>()?;
    Ok((full, reduced))
}

fn find_witness(sys: &CoverSystem, reduced: &[SpectrumReport], theta: &Rational) -> Result<Lemma21Witness> {
    for (t, class) in sys.classes().iter().enumerate() {
        let step = Rational::new(BigInt::from(sys.weight(t)), BigInt::from(class.modulus()));
        let shifted = frac_part(&(theta - step));
        if reduced[t].contains(theta) && reduced[t].contains(&shifted) {
            return Ok(Lemma21Witness {
                index: t,
                theta: theta.clone(),
                shifted,
            });
        }
    }
    Err(Error::InvariantViolation(format!("no class witnesses {theta}")))
}
