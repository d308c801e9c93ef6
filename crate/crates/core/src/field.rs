//! Number fields `K = Q(γ)` presented by a monic integer minimal polynomial,
//! with `O_K` taken to be `Z[γ]` (a power integral basis).
//!
//! Elements are coordinate vectors in the basis `1, γ, ..., γ^(n-1)`.
//! Integrality is tested two ways: directly on the coordinates, and through
//! the last-coordinate functional ψ applied to `μ, μγ, ..., μγ^(n-1)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use crate::arith::{bigint_to_u64, is_integer, solve_rational, transversal, transversal_size, IntMatrix, Rational};
use crate::error::{Error, Result};
use crate::report::Verdict;
use crate::spectrum::pow2;
use crate::subset_dp::tuple_counts;

/// Default bound on the number of coset representatives enumerated.
pub const DEFAULT_COSET_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    /// Ascending coefficients `c_0, ..., c_{n-1}, 1`.
    min_poly: Vec<BigInt>,
    /// Coordinates of `γ^(n+i)` for `i = 0..n-1`.
    reductions: Vec<Vec<BigInt>>,
}

impl NumberField {
    /// Rejects non-monic polynomials and, for degree at least 2, polynomials
    /// with a rational root. Other reducible polynomials are not detected
    /// here; they surface as [`Error::ReducibleMinPoly`] from division.
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        Self::from_bigints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_bigints(min_poly: Vec<BigInt>) -> Result<Self> {
        if min_poly.len() < 2 || !min_poly.last().is_some_and(One::is_one) {
            return Err(Error::NonMonic);
        }
        let n = min_poly.len() - 1;
        if n >= 2 {
            if let Some(root) = integer_root(&min_poly) {
                return Err(Error::ReducibleMinPoly(format!("{root} is a root")));
            }
        }
        // γ^n = -(c_0 + c_1 γ + ... + c_{n-1} γ^(n-1))
        let mut current: Vec<BigInt> = min_poly[..n].iter().map(|c| -c).collect();
        let mut reductions = Vec::with_capacity(n.saturating_sub(1));
        for _ in 0..n.saturating_sub(1) {
            reductions.push(current.clone());
            current = times_gamma_int(&current, &min_poly);
        }
        Ok(NumberField { min_poly, reductions })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn zero(&self) -> NFElement {
        NFElement {
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> NFElement {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> NFElement {
        let mut e = self.zero();
        e.coords[0] = c;
        e
    }

    /// `γ^j` in coordinates.
    pub fn gamma_power(&self, j: usize) -> NFElement {
        let mut e = self.one();
        for _ in 0..j {
            e = self.times_gamma(&e);
        }
        e
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<NFElement> {
        self.check(&coords)?;
        Ok(NFElement { coords })
    }

    pub fn integral_element(&self, coords: &[i64]) -> Result<NFElement> {
        self.element(
            coords
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    fn check(&self, coords: &[Rational]) -> Result<()> {
        if coords.len() != self.degree() {
            return Err(Error::Dimension {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        Ok(())
    }

    fn times_gamma(&self, a: &NFElement) -> NFElement {
        let n = self.degree();
        let top = a.coords[n - 1].clone();
        let mut coords = Vec::with_capacity(n);
        coords.push(Rational::zero());
        coords.extend(a.coords[..n - 1].iter().cloned());
        if !top.is_zero() {
            for (c, lead) in coords.iter_mut().zip(&self.min_poly) {
                *c -= &top * Rational::from_integer(lead.clone());
            }
        }
        NFElement { coords }
    }

    pub fn mul(&self, a: &NFElement, b: &NFElement) -> NFElement {
        let n = self.degree();
        let mut product = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                product[i + j] += x * y;
            }
        }
        let mut coords: Vec<Rational> = product[..n].to_vec();
        for (extra, row) in product[n..].iter().zip(&self.reductions) {
            if extra.is_zero() {
                continue;
            }
            for (c, r) in coords.iter_mut().zip(row) {
                *c += extra * Rational::from_integer(r.clone());
            }
        }
        NFElement { coords }
    }

    /// Matrix of `x -> b x` in the power basis; column `j` is `b γ^j`.
    pub fn multiplication_matrix(&self, b: &NFElement) -> Vec<Vec<Rational>> {
        let n = self.degree();
        let mut columns = Vec::with_capacity(n);
        let mut current = b.clone();
        for _ in 0..n {
            columns.push(current.coords.clone());
            current = self.times_gamma(&current);
        }
        (0..n)
            .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
            .collect()
    }

    /// Integer multiplication matrix of an integral element.
    pub fn integer_multiplication_matrix(&self, b: &NFElement) -> Result<IntMatrix> {
        let rows = self.multiplication_matrix(b);
        let n = self.degree();
        let mut entries = Vec::with_capacity(n * n);
        for v in rows.into_iter().flatten() {
            if !is_integer(&v) {
                return Err(Error::NotIntegral(b.to_string()));
            }
            entries.push(v.to_integer());
        }
        IntMatrix::new(n, n, entries)
    }

    /// The unique `y` with `b y = a`.
    pub fn div(&self, a: &NFElement, b: &NFElement) -> Result<NFElement> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.multiplication_matrix(b);
        let coords = solve_rational(&m, &a.coords).map_err(|e| match e {
            Error::SingularMatrix => Error::ReducibleMinPoly(format!("{b} is a nonzero zero divisor")),
            other => other,
        })?;
        Ok(NFElement { coords })
    }

    pub fn inverse(&self, b: &NFElement) -> Result<NFElement> {
        self.div(&self.one(), b)
    }

    /// ψ, the last power-basis coordinate.
    pub fn psi(&self, a: &NFElement) -> Rational {
        a.coords[self.degree() - 1].clone()
    }

    /// Integrality via ψ(a γ^j) for `j = 0..n-1`.
    pub fn is_integral_psi(&self, a: &NFElement) -> bool {
        let mut current = a.clone();
        for j in 0..self.degree() {
            if j > 0 {
                current = self.times_gamma(&current);
            }
            if !is_integer(&self.psi(&current)) {
                return false;
            }
        }
        true
    }

    /// Whether `x ∈ α + βO_K`.
    pub fn class_contains(&self, class: &NFResidueClass, x: &NFElement) -> Result<bool> {
        let q = self.div(&x.sub(&class.alpha), &class.beta)?;
        Ok(self.is_integral_psi(&q))
    }

    /// One representative of each coset of `O_K / βO_K`.
    ///
    /// Uses the Hermite normal form of the multiplication-by-β matrix; the
    /// representatives are the vectors below its diagonal, lexicographically.
    pub fn coset_reps(&self, beta: &NFElement, cap: u64) -> Result<Vec<NFElement>> {
        if beta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.integer_multiplication_matrix(beta)?;
        let (h, _) = m.hnf().map_err(|e| match e {
            Error::SingularMatrix => Error::ReducibleMinPoly(format!("{beta} is a nonzero zero divisor")),
            other => other,
        })?;
        let size = transversal_size(&h);
        if bigint_to_u64(&size).is_none_or(|s| s > cap) {
            return Err(Error::CosetExplosion {
                count: size.to_string(),
                cap,
            });
        }
        Ok(transversal(&h)
            .into_iter()
            .map(|v| NFElement {
                coords: v.into_iter().map(Rational::from_integer).collect(),
            })
            .collect())
    }

    /// `|N(β)|`, the index of `βO_K` in `O_K`.
    pub fn norm_index(&self, beta: &NFElement) -> Result<BigInt> {
        Ok(self.integer_multiplication_matrix(beta)?.det()?.abs())
    }
}

/// An integer root of a monic integer polynomial, if one exists.
fn integer_root(poly: &[BigInt]) -> Option<BigInt> {
    let c0 = &poly[0];
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let eval = |x: &BigInt| poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    let bound = c0.abs();
    // divisors of c0, both signs; trial division is fine at these sizes
    let limit = bound.to_u64().unwrap_or(u64::MAX).min(1 << 24);
    let mut d = 1u64;
    while d <= limit {
        let bd = BigInt::from(d);
        if bound.is_multiple_of(&bd) {
            for cand in [bd.clone(), -bd] {
                if eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        d += 1;
    }
    None
}

fn times_gamma_int(v: &[BigInt], min_poly: &[BigInt]) -> Vec<BigInt> {
    let n = v.len();
    let top = v[n - 1].clone();
    let mut out = Vec::with_capacity(n);
    out.push(BigInt::zero());
    out.extend(v[..n - 1].iter().cloned());
    for (c, lead) in out.iter_mut().zip(min_poly) {
        *c -= &top * lead;
    }
    out
}

/// Element of `K` as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NFElement {
    coords: Vec<Rational>,
}

impl NFElement {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Integrality read directly off the coordinates.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(is_integer)
    }

    pub fn add(&self, other: &NFElement) -> NFElement {
        NFElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &NFElement) -> NFElement {
        NFElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> NFElement {
        NFElement {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// lcm of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `α + βO_K` with integral `α` and nonzero integral `β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFResidueClass {
    alpha: NFElement,
    beta: NFElement,
}

impl NFResidueClass {
    pub fn new(alpha: NFElement, beta: NFElement) -> Result<Self> {
        if alpha.degree() != beta.degree() {
            return Err(Error::Dimension {
                expected: alpha.degree(),
                got: beta.degree(),
            });
        }
        if !alpha.is_integral() {
            return Err(Error::NotIntegral(alpha.to_string()));
        }
        if !beta.is_integral() {
            return Err(Error::NotIntegral(beta.to_string()));
        }
        if beta.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(NFResidueClass { alpha, beta })
    }

    pub fn alpha(&self) -> &NFElement {
        &self.alpha
    }

    pub fn beta(&self) -> &NFElement {
        &self.beta
    }
}

/// A system of residue classes of `O_K` with weights `ω_s ∈ O_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFCoverSystem {
    field: NumberField,
    classes: Vec<NFResidueClass>,
    omegas: Option<Vec<NFElement>>,
}

impl NFCoverSystem {
    pub fn new(field: NumberField, classes: Vec<NFResidueClass>, omegas: Option<Vec<NFElement>>) -> Result<Self> {
        let n = field.degree();
        for c in &classes {
            if c.alpha.degree() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: c.alpha.degree(),
                });
            }
        }
        if let Some(w) = &omegas {
            if w.len() != classes.len() {
                return Err(Error::WeightLength {
                    weights: w.len(),
                    classes: classes.len(),
                });
            }
            for e in w {
                if e.degree() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: e.degree(),
                    });
                }
                if !e.is_integral() {
                    return Err(Error::NotIntegral(e.to_string()));
                }
            }
        }
        Ok(NFCoverSystem { field, classes, omegas })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn classes(&self) -> &[NFResidueClass] {
        &self.classes
    }

    pub fn explicit_omegas(&self) -> Option<&[NFElement]> {
        self.omegas.as_deref()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn omega(&self, s: usize) -> NFElement {
        match &self.omegas {
            Some(w) => w[s].clone(),
            None => self.field.one(),
        }
    }

    pub fn drop_class(&self, index: usize) -> Result<NFCoverSystem> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        let mut out = self.clone();
        out.classes.remove(index);
        if let Some(w) = &mut out.omegas {
            w.remove(index);
        }
        Ok(out)
    }

    /// `Π β_s`; the covering function is invariant under translation by
    /// its multiples.
    pub fn beta_product(&self) -> NFElement {
        self.classes
            .iter()
            .fold(self.field.one(), |acc, c| self.field.mul(&acc, &c.beta))
    }

    /// Number of classes containing the integral element `x`.
    pub fn covering_count(&self, x: &NFElement) -> Result<u64> {
        let mut count = 0;
        for c in &self.classes {
            if self.field.class_contains(c, x)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Covering counts over a transversal of `O_K / (Π β_s)O_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFCoverageScan {
    pub representatives: usize,
    pub multiplicity: u64,
    /// A representative attaining the minimum.
    pub minimizer: NFElement,
}

pub fn nf_coverage_scan(sys: &NFCoverSystem, coset_cap: u64) -> Result<NFCoverageScan> {
    let field = &sys.field;
    let reps = field.coset_reps(&sys.beta_product(), coset_cap)?;
    let inverses: Vec<NFElement> = sys
        .classes
        .iter()
        .map(|c| field.inverse(&c.beta))
        .collect::<Result<_>>()?;
    let mut best: Option<(u64, NFElement)> = None;
    for x in &reps {
        let count = sys
            .classes
            .iter()
            .zip(&inverses)
            .filter(|(c, inv)| field.mul(&x.sub(&c.alpha), inv).is_integral())
            .count() as u64;
        if best.as_ref().is_none_or(|(b, _)| count < *b) {
            best = Some((count, x.clone()));
        }
    }
    let (multiplicity, minimizer) = best.expect("a transversal is never empty");
    Ok(NFCoverageScan {
        representatives: reps.len(),
        multiplicity,
        minimizer,
    })
}

/// Largest `m` such that every element of `O_K` lies in `m` classes.
pub fn nf_cover_multiplicity(sys: &NFCoverSystem, coset_cap: u64) -> Result<u64> {
    Ok(nf_coverage_scan(sys, coset_cap)?.multiplicity)
}

/// Subset counts per class of `K / O_K` for the sums `Σ_{s∈I} ω_s/β_s`.
///
/// Keys are coordinate numerators reduced into `[0, D)` over the common
/// denominator `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFSpectrum {
    pub denominator: u64,
    pub counts: BTreeMap<Vec<u64>, BigUint>,
}

impl NFSpectrum {
    pub fn key_of(&self, mu: &NFElement) -> Option<Vec<u64>> {
        class_key(mu, self.denominator)
    }

    pub fn count_for(&self, mu: &NFElement) -> BigUint {
        self.key_of(mu)
            .and_then(|k| self.counts.get(&k).cloned())
            .unwrap_or_default()
    }

    pub fn element_of(&self, key: &[u64]) -> NFElement {
        let d = BigInt::from(self.denominator);
        NFElement {
            coords: key.iter().map(|&v| Rational::new(BigInt::from(v), d.clone())).collect(),
        }
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

fn class_key(e: &NFElement, denominator: u64) -> Option<Vec<u64>> {
    let d = BigInt::from(denominator);
    e.coords
        .iter()
        .map(|c| {
            let scaled = c * Rational::from_integer(d.clone());
            if !scaled.is_integer() {
                return None;
            }
            bigint_to_u64(&scaled.to_integer().mod_floor(&d))
        })
        .collect()
}

fn quotients(sys: &NFCoverSystem) -> Result<Vec<NFElement>> {
    (0..sys.len())
        .map(|s| sys.field.div(&sys.omega(s), &sys.classes[s].beta))
        .collect()
}

fn common_denominator(elements: &[&NFElement]) -> Result<u64> {
    let d = elements.iter().fold(BigInt::one(), |acc, e| acc.lcm(&e.denominator()));
    bigint_to_u64(&d).ok_or(Error::PeriodOverflow)
}

/// Subset-class counts by shift-add over `(Z/D)^n`.
pub fn nf_spectrum(sys: &NFCoverSystem, mu: Option<&NFElement>) -> Result<NFSpectrum> {
    let values = quotients(sys)?;
    let mut all: Vec<&NFElement> = values.iter().collect();
    all.extend(mu);
    let denominator = common_denominator(&all)?;
    let offsets: Vec<Vec<u64>> = values
        .iter()
        .map(|v| class_key(v, denominator).ok_or_else(|| Error::InvariantViolation("denominator".into())))
        .collect::<Result<_>>()?;
    let counts = if offsets.is_empty() {
        BTreeMap::from([(vec![0; sys.field.degree()], BigUint::one())])
    } else {
        tuple_counts(&offsets, denominator)
    };
    Ok(NFSpectrum { denominator, counts })
}

/// Same counts by enumerating all `2^k` subsets with exact sums.
pub fn nf_spectrum_bruteforce(sys: &NFCoverSystem, mu: Option<&NFElement>, cap: usize) -> Result<NFSpectrum> {
    let k = sys.len();
    if k > cap || k >= 64 {
        return Err(Error::BruteForceCap { k, cap });
    }
    let values = quotients(sys)?;
    let mut all: Vec<&NFElement> = values.iter().collect();
    all.extend(mu);
    let denominator = common_denominator(&all)?;
    let mut counts: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
    for mask in 0u64..(1 << k) {
        let sum = (0..k)
            .filter(|s| mask >> s & 1 == 1)
            .fold(sys.field.zero(), |acc, s| acc.add(&values[s]));
        let key = class_key(&sum, denominator)
            .ok_or_else(|| Error::InvariantViolation(format!("{sum} not over {denominator}")))?;
        *counts.entry(key).or_default() += 1u32;
    }
    Ok(NFSpectrum { denominator, counts })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem12Report {
    pub multiplicity: u64,
    /// `2^m`
    pub bound: BigUint,
    pub mu: NFElement,
    /// Subsets with `Σ ω_s/β_s ∈ μ + O_K`.
    pub count: BigUint,
    pub spectrum: NFSpectrum,
    /// Nonempty classes whose count is below the bound.
    pub offending: Vec<Vec<u64>>,
    pub verdict: Verdict,
}

/// The subsets landing in `μ + O_K` number zero or at least `2^m`; the same
/// is checked for every class reached by some subset sum.
pub fn verify_theorem12(sys: &NFCoverSystem, mu: &NFElement, coset_cap: u64) -> Result<Theorem12Report> {
    let spectrum = nf_spectrum(sys, Some(mu))?;
    check_theorem12(sys, mu, spectrum, coset_cap)
}

/// Evaluates the bound against a precomputed class table.
pub fn check_theorem12(
    sys: &NFCoverSystem,
    mu: &NFElement,
    spectrum: NFSpectrum,
    coset_cap: u64,
) -> Result<Theorem12Report> {
    if mu.degree() != sys.field.degree() {
        return Err(Error::Dimension {
            expected: sys.field.degree(),
            got: mu.degree(),
        });
    }
    let multiplicity = nf_cover_multiplicity(sys, coset_cap)?;
    let bound = pow2(multiplicity);
    let count = spectrum.count_for(mu);
    let offending: Vec<Vec<u64>> = spectrum
        .counts
        .iter()
        .filter(|(_, c)| **c < bound)
        .map(|(k, _)| k.clone())
        .collect();
    let verdict = if multiplicity == 0 {
        Verdict::NotApplicable
    } else {
        Verdict::from_check(offending.is_empty() && (count.is_zero() || count >= bound))
    };
    Ok(Theorem12Report {
        multiplicity,
        bound,
        mu: mu.clone(),
        count,
        spectrum,
        offending,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub multiplicity: u64,
    pub representatives: usize,
    /// Representatives `x` for which some `ψ(ω_s (x + α_s)/β_s)` is an integer.
    pub certified: usize,
    /// First representative with no integral factor exponent.
    pub failing: Option<NFElement>,
    pub verdict: Verdict,
}

/// For each `x` in a transversal, some `s` has `ψ(ω_s (x + α_s)/β_s) ∈ Z`.
///
/// On a cover this always holds, since `-x` lies in some `α_s + β_s O_K`.
/// Non-covers are still scanned; a failing `x` is then reported with a
/// not-applicable verdict.
pub fn vanishing_witness_check(sys: &NFCoverSystem, coset_cap: u64) -> Result<VanishingReport> {
    let field = &sys.field;
    let scan = nf_coverage_scan(sys, coset_cap)?;
    let reps = field.coset_reps(&sys.beta_product(), coset_cap)?;
    let factors: Vec<(NFElement, NFElement)> = (0..sys.len())
        .map(|s| {
            let inv = field.inverse(&sys.classes[s].beta)?;
            Ok((field.mul(&sys.omega(s), &inv), sys.classes[s].alpha.clone()))
        })
        .collect::<Result<_>>()?;
    let mut certified = 0;
    let mut failing = None;
    for x in &reps {
        let ok = factors
            .iter()
            .any(|(ratio, alpha)| is_integer(&field.psi(&field.mul(ratio, &x.add(alpha)))));
        if ok {
            certified += 1;
        } else if failing.is_none() {
            failing = Some(x.clone());
        }
    }
    let verdict = match (scan.multiplicity, &failing) {
        (_, None) => Verdict::Pass,
        (0, Some(_)) => Verdict::NotApplicable,
        (_, Some(_)) => Verdict::Fail,
    };
    Ok(VanishingReport {
        multiplicity: scan.multiplicity,
        representatives: reps.len(),
        certified,
        failing,
        verdict,
    })
}
