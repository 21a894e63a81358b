use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real antisymmetric n×n matrix, an element of so(n).
///
/// Only the strict upper triangle is stored (row-major: (0,1), (0,2), …,
/// (0,n-1), (1,2), …), so antisymmetry and the zero diagonal hold by
/// construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSkew")]
pub struct SkewMatrix {
    n: usize,
    upper: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSkew {
    n: usize,
    upper: Vec<f64>,
}

impl TryFrom<RawSkew> for SkewMatrix {
    type Error = Error;

    fn try_from(raw: RawSkew) -> Result<Self> {
        SkewMatrix::from_upper(raw.n, raw.upper)
    }
}

/// Number of strict-upper entries of an n×n matrix.
pub const fn upper_len(n: usize) -> usize {
    n * (n - 1) / 2
}

#[inline]
pub(crate) fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self {
            n,
            upper: vec![0.0; upper_len(n)],
        })
    }

    pub fn from_upper(n: usize, upper: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        if upper.len() != upper_len(n) {
            return Err(Error::UpperLength {
                n,
                expected: upper_len(n),
                got: upper.len(),
            });
        }
        Ok(Self { n, upper })
    }

    /// Builds the matrix from `f(i, j)` evaluated for every `i < j` (0-based).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in i + 1..n {
                m.upper[upper_index(n, i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Reads the strict upper triangle of a square dense matrix; the lower
    /// triangle and diagonal are ignored.
    pub fn from_dense_upper(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidArgument(format!(
                "matrix is {}x{}, not square",
                m.nrows(),
                m.ncols()
            )));
        }
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub(crate) fn upper_mut(&mut self) -> &mut [f64] {
        &mut self.upper
    }

    /// Entry (i, j), 0-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0.0,
            Less => self.upper[upper_index(self.n, i, j)],
            Greater => -self.upper[upper_index(self.n, j, i)],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i >= self.n || j >= self.n || i == j {
            return Err(Error::InvalidArgument(format!(
                "entry ({i}, {j}) is not an off-diagonal entry of a {0}x{0} matrix",
                self.n
            )));
        }
        if i < j {
            self.upper[upper_index(self.n, i, j)] = value;
        } else {
            self.upper[upper_index(self.n, j, i)] = -value;
        }
        Ok(())
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Norm induced by the Ad-invariant inner product, sqrt(-½ Tr(X²)).
    pub fn norm(&self) -> f64 {
        self.upper.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.upper.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.upper.iter().all(|v| v.is_finite())
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n: self.n,
            upper: self.upper.iter().map(|v| v * s).collect(),
        }
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: f64, x: &SkewMatrix) -> Result<()> {
        self.check_same(x)?;
        for (s, v) in self.upper.iter_mut().zip(&x.upper) {
            *s += a * v;
        }
        Ok(())
    }

    /// Matrix commutator XY − YX, evaluated directly on the upper triangle.
    pub fn commutator(&self, other: &SkewMatrix) -> Result<SkewMatrix> {
        self.check_same(other)?;
        let n = self.n;
        SkewMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.get(i, k) * other.get(k, j) - other.get(i, k) * self.get(k, j))
                .sum()
        })
    }

    pub(crate) fn check_same(&self, other: &SkewMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &SkewMatrix, f: impl Fn(f64, f64) -> f64) -> SkewMatrix {
        assert_eq!(self.n, other.n, "skew matrices of different dimension");
        SkewMatrix {
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

/// Ad-invariant inner product ⟨X, Y⟩ = −½ Tr(XY).
///
/// For antisymmetric matrices this is the sum of products of the upper
/// entries, which is what gets evaluated.
pub fn inner_product(x: &SkewMatrix, y: &SkewMatrix) -> Result<f64> {
    x.check_same(y)?;
    Ok(x.upper.iter().zip(&y.upper).map(|(a, b)| a * b).sum())
}

// Arithmetic operators panic on dimension mismatch, like nalgebra's dynamic
// matrices do; the fallible forms are `axpy` and `commutator`.

impl Add for &SkewMatrix {
    type Output = SkewMatrix;
    fn add(self, rhs: &SkewMatrix) -> SkewMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for SkewMatrix {
    type Output = SkewMatrix;
    fn add(self, rhs: SkewMatrix) -> SkewMatrix {
        &self + &rhs
    }
}

impl AddAssign<&SkewMatrix> for SkewMatrix {
    fn add_assign(&mut self, rhs: &SkewMatrix) {
        assert_eq!(self.n, rhs.n, "skew matrices of different dimension");
        for (s, v) in self.upper.iter_mut().zip(&rhs.upper) {
            *s += v;
        }
    }
}

impl Sub for &SkewMatrix {
    type Output = SkewMatrix;
    fn sub(self, rhs: &SkewMatrix) -> SkewMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for SkewMatrix {
    type Output = SkewMatrix;
    fn sub(self, rhs: SkewMatrix) -> SkewMatrix {
        &self - &rhs
    }
}

impl Mul<f64> for &SkewMatrix {
    type Output = SkewMatrix;
    fn mul(self, s: f64) -> SkewMatrix {
        self.scaled(s)
    }
}

impl Mul<f64> for SkewMatrix {
    type Output = SkewMatrix;
    fn mul(self, s: f64) -> SkewMatrix {
        self.scaled(s)
    }
}

impl Neg for SkewMatrix {
    type Output = SkewMatrix;
    fn neg(self) -> SkewMatrix {
        self.scaled(-1.0)
    }
}
