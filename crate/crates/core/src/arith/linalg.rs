//! Dense exact vectors and matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::scalar::{lcm_denominators, Rational};
use crate::error::{Error, Result};

pub type Vector = Vec<Rational>;

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

/// Builds a vector from integers; handy in tests and generators.
pub fn ivec(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Rational::from_integer(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> Vector {
    a.iter()
        .zip(b)
        .map(|(x, y)| if y.is_zero() { x.clone() } else { x + s * y })
        .collect()
}

pub fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

pub fn midpoint(a: &[Rational], b: &[Rational]) -> Vector {
    let half = Rational::new(1, 2);
    a.iter().zip(b).map(|(x, y)| (x + y) * &half).collect()
}

pub fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Rescales a direction to the unique positive multiple with coprime
/// integer entries. The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> Vector {
    if is_zero(v) {
        return v.to_vec();
    }
    let l = lcm_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::from(x / &g)).collect()
}

/// Scales so that the first nonzero entry has absolute value one.
pub fn normalize_leading(v: &[Rational]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs().recip();
            scale(v, &s)
        }
        None => v.to_vec(),
    }
}

/// Scales so that the first nonzero entry is exactly one.
pub fn normalize_leading_signed(v: &[Rational]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.recip();
            scale(v, &s)
        }
        None => v.to_vec(),
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vector>,
}

impl Matrix {
    pub fn new(nrows: usize, ncols: usize, rows: Vec<Vector>) -> Result<Self> {
        check_dim(nrows, rows.len())?;
        for r in &rows {
            check_dim(ncols, r.len())?;
        }
        Ok(Matrix { nrows, ncols, rows })
    }

    /// Builds from row vectors; `ncols` must be given for the zero-row case.
    pub fn from_rows(ncols: usize, rows: Vec<Vector>) -> Result<Self> {
        Self::new(rows.len(), ncols, rows)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| ivec(r)).collect();
        Matrix { nrows: rows.len(), ncols, rows }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, rows: vec![zeros(ncols); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { nrows: n, ncols: n, rows: (0..n).map(|i| unit(n, i)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vector> {
        check_dim(self.ncols, x.len())?;
        Ok(self.rows.iter().map(|r| dot(r, x)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.ncols, other.nrows)?;
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
            .collect();
        Ok(Matrix { nrows: self.nrows, ncols: other.ncols, rows })
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows, self.ncols)
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            rows[r] = scale(&rows[r], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                *row = axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Exact rank by Gaussian elimination.
pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = zeros(ncols);
        v[free] = Rational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `M x = rhs`, or `None` when the system is inconsistent.
pub fn solve(rows: &[Vector], rhs: &[Rational], ncols: usize) -> Option<Vector> {
    let mut aug: Vec<Vector> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zeros(ncols);
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}
