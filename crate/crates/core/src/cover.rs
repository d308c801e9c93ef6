//! Residue classes `a(n) = a + nZ` and systems of them.

use std::fmt;

use crate::arith::lcm_all;
use crate::error::{Error, Result};

/// Points evaluated per window when scanning a period.
const SCAN_WINDOW: u64 = 1 << 16;

/// The arithmetic progression `a + nZ`, stored with `0 <= a < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueClass {
    residue: u64,
    modulus: u64,
}

impl ResidueClass {
    /// Normalizes any integer residue into `[0, n)`.
    pub fn new(a: i64, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(ResidueClass {
            residue: a.rem_euclid(n) as u64,
            modulus: n as u64,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, x: i64) -> bool {
        (x as i128).rem_euclid(self.modulus as i128) as u64 == self.residue
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.residue, self.modulus)
    }
}

/// An ordered system `{a_s(n_s)}` with optional integer weights `m_s`.
///
/// Absent weights mean every weight is 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverSystem {
    classes: Vec<ResidueClass>,
    weights: Option<Vec<i64>>,
}

impl CoverSystem {
    pub fn new(classes: Vec<ResidueClass>) -> Self {
        CoverSystem { classes, weights: None }
    }

    pub fn with_weights(classes: Vec<ResidueClass>, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != classes.len() {
            return Err(Error::WeightLength {
                weights: weights.len(),
                classes: classes.len(),
            });
        }
        Ok(CoverSystem {
            classes,
            weights: Some(weights),
        })
    }

    /// Convenience constructor from `(a, n)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let classes = pairs
            .iter()
            .map(|&(a, n)| ResidueClass::new(a, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoverSystem::new(classes))
    }

    pub fn classes(&self) -> &[ResidueClass] {
        &self.classes
    }

    pub fn explicit_weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn weight(&self, s: usize) -> i64 {
        self.weights.as_ref().map_or(1, |w| w[s])
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..self.len()).map(|s| self.weight(s)).collect()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.first_nonunit_weight().is_none()
    }

    pub(crate) fn first_nonunit_weight(&self) -> Option<usize> {
        self.weights.as_ref().and_then(|w| w.iter().position(|&m| m != 1))
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.classes.iter().map(ResidueClass::modulus).collect()
    }

    /// lcm of all moduli; the covering function is periodic modulo it.
    pub fn period(&self) -> Result<u64> {
        lcm_all(&self.moduli())
    }

    /// Appends a class; weight 1 is recorded when weights are explicit.
    pub fn push(&mut self, class: ResidueClass, weight: i64) {
        self.classes.push(class);
        match &mut self.weights {
            Some(w) => w.push(weight),
            None if weight != 1 => {
                let mut w = vec![1; self.classes.len() - 1];
                w.push(weight);
                self.weights = Some(w);
            }
            None => {}
        }
    }

    /// The system `A_t` with class `index` (0-based) removed.
    pub fn drop_class(&self, index: usize) -> Result<CoverSystem> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        let mut classes = self.classes.clone();
        classes.remove(index);
        let weights = self.weights.as_ref().map(|w| {
            let mut w = w.clone();
            w.remove(index);
            w
        });
        Ok(CoverSystem { classes, weights })
    }

    /// `w_A(x)`: how many classes contain `x`.
    pub fn covering_function(&self, x: i64) -> u64 {
        self.classes.iter().filter(|c| c.contains(x)).count() as u64
    }

    /// `w_A` evaluated on `start..start+len` (with `start >= 0`).
    fn coverage_window(&self, start: u64, len: u64) -> Vec<u32> {
        let mut w = vec![0u32; len as usize];
        for c in &self.classes {
            let n = c.modulus();
            let offset = (c.residue() + n - start % n) % n;
            let mut x = offset;
            while x < len {
                w[x as usize] += 1;
                x += n;
            }
        }
        w
    }

    /// Largest `m` such that this is an m-cover; 0 for the empty system.
    pub fn covering_multiplicity(&self) -> Result<u64> {
        Ok(self.coverage_minimum(None)?.0)
    }

    /// Smallest value of `w_A` over one period, with a point attaining it.
    pub fn coverage_minimum_point(&self) -> Result<(u64, u64)> {
        self.coverage_minimum(None)
    }

    /// Whether every integer lies in at least `m` classes.
    ///
    /// Stops scanning at the first point covered fewer than `m` times.
    pub fn is_m_cover(&self, m: u64) -> Result<bool> {
        if m == 0 {
            return Ok(true);
        }
        Ok(self.coverage_minimum(Some(m))?.0 >= m)
    }

    /// First point with `w_A(x) < m`, if any.
    pub fn uncovered_point(&self, m: u64) -> Result<Option<u64>> {
        let (min, x) = self.coverage_minimum(Some(m))?;
        Ok((min < m).then_some(x))
    }

    fn coverage_minimum(&self, stop_below: Option<u64>) -> Result<(u64, u64)> {
        if self.is_empty() {
            return Ok((0, 0));
        }
        let period = self.period()?;
        let mut best = (u64::MAX, 0);
        let mut start = 0;
        while start < period {
            let len = SCAN_WINDOW.min(period - start);
            for (i, &v) in self.coverage_window(start, len).iter().enumerate() {
                if (v as u64) < best.0 {
                    best = (v as u64, start + i as u64);
                    if stop_below.is_some_and(|m| best.0 < m) {
                        return Ok(best);
                    }
                }
            }
            start += len;
        }
        Ok(best)
    }

    /// Whether `w_A(x) = m` for every integer `x`.
    pub fn is_exact_cover(&self) -> Result<Option<u64>> {
        if self.is_empty() {
            return Ok(Some(0));
        }
        let period = self.period()?;
        let mut value = None;
        let mut start = 0;
        while start < period {
            let len = SCAN_WINDOW.min(period - start);
            for v in self.coverage_window(start, len) {
                match value {
                    None => value = Some(v),
                    Some(prev) if prev != v => return Ok(None),
                    Some(_) => {}
                }
            }
            start += len;
        }
        Ok(value.map(u64::from))
    }

    /// Whether `w_A(x) = w_A(x + q)` for every integer `x`.
    pub fn is_periodic_mod(&self, q: u64) -> Result<bool> {
        if q == 0 {
            return Err(Error::InvalidModulus(0));
        }
        if self.is_empty() {
            return Ok(true);
        }
        let period = self.period()?;
        let shift = q % period;
        let mut start = 0;
        while start < period {
            let len = SCAN_WINDOW.min(period - start);
            let here = self.coverage_window(start, len);
            let there = self.coverage_window((start + shift) % period, len);
            if here != there {
                return Ok(false);
            }
            start += len;
        }
        Ok(true)
    }
}

impl fmt::Display for CoverSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}
