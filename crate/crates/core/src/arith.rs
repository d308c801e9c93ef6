//! Exact scalars and integer linear algebra.
//!
//! Fractional parts, periods and the Hermite normal form used for lattice
//! coset enumeration. Everything here is exact; there is no floating point.

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact reduced fraction with positive denominator.
///
/// `BigRational` normalizes on construction, so structural equality is
/// value equality and values can be used as ordered map keys.
pub type Rational = BigRational;

/// Largest period accepted by [`lcm_all`].
pub const PERIOD_BOUND: u64 = i64::MAX as u64;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `x - floor(x)`, always in `[0, 1)`.
pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Least common multiple of positive integers, bounded by [`PERIOD_BOUND`].
///
/// The empty list has lcm 1.
pub fn lcm_all(values: &[u64]) -> Result<u64> {
    let mut acc: u64 = 1;
    for &v in values {
        if v == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let g = acc.gcd(&v);
        acc = (acc / g)
            .checked_mul(v)
            .filter(|&l| l <= PERIOD_BOUND)
            .ok_or(Error::PeriodOverflow)?;
    }
    Ok(acc)
}

/// `(g, x, y)` with `x*a + y*b = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        IntMatrix::new(rows.len(), cols, entries)
    }

    /// Builds a square matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        let n = columns.len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Shape("columns must form a square matrix".into()));
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                entries[i * n + j] = v.clone();
            }
        }
        IntMatrix::new(n, n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols).map(<[BigInt]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for l in 0..self.cols {
                    acc += self.get(i, l) * other.get(l, j);
                }
                entries.push(acc);
            }
        }
        IntMatrix::new(self.rows, other.cols, entries)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    /// Column-operation Hermite normal form.
    ///
    /// Returns `(h, u)` with `h = self * u`, `u` unimodular, `h` lower
    /// triangular with positive diagonal and every entry left of the diagonal
    /// reduced into `[0, h[i][i])`.
    pub fn hnf(&self) -> Result<(IntMatrix, IntMatrix)> {
        if !self.is_square() {
            return Err(Error::Shape("hnf requires a square matrix".into()));
        }
        let n = self.rows;
        let mut h = self.clone();
        let mut u = IntMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let a = h.get(i, i).clone();
                let b = h.get(i, j).clone();
                let (g, x, y) = extended_gcd(&a, &b);
                let a_g = &a / &g;
                let b_g = &b / &g;
                // [col_i, col_j] <- [x col_i + y col_j, -b/g col_i + a/g col_j], det 1
                h.combine_columns(i, j, &x, &y, &-&b_g, &a_g);
                u.combine_columns(i, j, &x, &y, &-&b_g, &a_g);
            }
            if h.get(i, i).is_zero() {
                return Err(Error::SingularMatrix);
            }
            if h.get(i, i).is_negative() {
                h.negate_column(i);
                u.negate_column(i);
            }
            let pivot = h.get(i, i).clone();
            for j in 0..i {
                let q = h.get(i, j).div_floor(&pivot);
                if !q.is_zero() {
                    h.sub_column_multiple(j, i, &q);
                    u.sub_column_multiple(j, i, &q);
                }
            }
        }
        Ok((h, u))
    }

    fn combine_columns(&mut self, i: usize, j: usize, ii: &BigInt, ji: &BigInt, ij: &BigInt, jj: &BigInt) {
        for r in 0..self.rows {
            let ci = self.get(r, i).clone();
            let cj = self.get(r, j).clone();
            *self.get_mut(r, i) = ii * &ci + ji * &cj;
            *self.get_mut(r, j) = ij * &ci + jj * &cj;
        }
    }

    fn negate_column(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j);
            *self.get_mut(r, j) = v;
        }
    }

    /// col_target -= q * col_source
    fn sub_column_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, target) - q * self.get(r, source);
            *self.get_mut(r, target) = v;
        }
    }

    /// Canonical-shape predicate for [`IntMatrix::hnf`] output.
    pub fn is_hermite_lower(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| {
            let d = self.get(i, i);
            d.is_positive()
                && (i + 1..self.cols).all(|j| self.get(i, j).is_zero())
                && (0..i).all(|j| !self.get(i, j).is_negative() && self.get(i, j) < d)
        })
    }

    /// Whether `v` lies in the column lattice of this (nonsingular) matrix.
    pub fn lattice_contains(&self, v: &[BigInt]) -> Result<bool> {
        let a: Vec<Vec<Rational>> = self
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(Rational::from_integer).collect())
            .collect();
        let rhs: Vec<Rational> = v.iter().cloned().map(Rational::from_integer).collect();
        let z = solve_rational(&a, &rhs)?;
        Ok(z.iter().all(is_integer))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.cols)).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Number of lattice cosets `Z^n / hZ^n` for an HNF matrix `h`.
pub fn transversal_size(h: &IntMatrix) -> BigInt {
    (0..h.rows()).map(|i| h.get(i, i).clone()).product()
}

/// All vectors `x` with `0 <= x[i] < h[i][i]`, in lexicographic order.
///
/// For a lower-triangular `h` with positive diagonal this is a complete set
/// of representatives of `Z^n / hZ^n`.
pub fn transversal(h: &IntMatrix) -> Vec<Vec<BigInt>> {
    let bounds: Vec<BigInt> = (0..h.rows()).map(|i| h.get(i, i).clone()).collect();
    let mut out = Vec::new();
    let mut current = vec![BigInt::zero(); bounds.len()];
    if bounds.iter().any(|b| !b.is_positive()) {
        return out;
    }
    loop {
        out.push(current.clone());
        // odometer, last coordinate fastest
        let mut idx = bounds.len();
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            current[idx] += 1;
            if current[idx] < bounds[idx] {
                break;
            }
            current[idx] = BigInt::zero();
        }
    }
}

/// Solves `a * x = b` over the rationals for square nonsingular `a`.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) || b.len() != n {
        return Err(Error::Shape("solve requires a square system".into()));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *v -= &factor * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub(crate) fn bigint_to_u64(v: &BigInt) -> Option<u64> {
    match v.sign() {
        Sign::Minus => None,
        _ => v.to_u64(),
    }
}
