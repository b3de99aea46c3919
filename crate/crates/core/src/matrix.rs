//! Small dense square matrices over exact rings.
//!
//! Everything in the crate is at most 8x8, so a flat row-major `Vec` is all
//! that is needed. The same type serves integer gate matrices, Gaussian
//! integer matrices for the Hermitian layers and Gaussian rational matrices
//! for the central charge.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Num, Zero};

/// Ring elements usable as matrix entries.
pub trait Scalar: Clone + PartialEq + Num + Neg<Output = Self> {}
impl<T: Clone + PartialEq + Num + Neg<Output = T>> Scalar for T {}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

/// Exact integer matrix; the realization target for Pauli tensors and gates.
pub type DenseIntMatrix = Matrix<i64>;

/// Matrix over the Gaussian integers.
pub type GaussianIntMatrix = Matrix<Complex<i64>>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == dim),
            "rows must form a square"
        );
        Self {
            dim,
            entries: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    /// Assembles a block matrix from a square grid of equally sized square blocks.
    pub fn from_blocks(blocks: &[Vec<Matrix<T>>]) -> Self {
        let grid = blocks.len();
        let b = blocks[0][0].dim;
        Self::from_fn(grid * b, |r, c| {
            blocks[r / b][c / b][(r % b, c % b)].clone()
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.dim).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|e| e.clone() * s.clone())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let d = other.dim;
        Self::from_fn(self.dim * d, |r, c| {
            self[(r / d, c / d)].clone() * other[(r % d, c % d)].clone()
        })
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        *self == -self.transpose()
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Anticommutator `self * other + other * self`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Fraction-free (Bareiss) determinant; every division is exact over an
    /// integral domain.
    pub fn determinant(&self) -> T {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return T::zero();
            };
            if p != k {
                for c in 0..n {
                    a.swap(p * n + c, k * n + c);
                }
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j].clone() * a[k * n + k].clone()
                        - a[i * n + k].clone() * a[k * n + j].clone();
                    a[i * n + j] = v / prev.clone();
                }
            }
            prev = a[k * n + k].clone();
        }
        let det = if n == 0 { T::one() } else { prev };
        if sign_flip {
            -det
        } else {
            det
        }
    }
}

impl DenseIntMatrix {
    /// True when `M * M^T` is the identity.
    pub fn is_orthogonal(&self) -> bool {
        (self * &self.transpose()).is_identity()
    }

    pub fn to_gaussian(&self) -> GaussianIntMatrix {
        self.map(|&e| Complex::new(e, 0))
    }
}

impl GaussianIntMatrix {
    pub fn conj(&self) -> Self {
        self.map(|e| e.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.entries[r * self.dim + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.entries[r * self.dim + c]
    }
}

impl<'a, T: Scalar> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out: Matrix<T> = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs.entries[k * n + c];
                    if !b.is_zero() {
                        out.entries[r * n + c] =
                            out.entries[r * n + c].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<'a, T: Scalar> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, T: Scalar> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix {
            dim: self.dim,
            entries: self.entries.into_iter().map(|e| -e).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        -self.clone()
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.entries[r * self.dim..(r + 1) * self.dim]
                .iter()
                .map(|e| format!("{e:>3}"))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The 2x2 building blocks used by the gate constructions.
pub mod blocks {
    use super::DenseIntMatrix;

    pub fn i2() -> DenseIntMatrix {
        DenseIntMatrix::identity(2)
    }
    pub fn x2() -> DenseIntMatrix {
        DenseIntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])
    }
    pub fn y2() -> DenseIntMatrix {
        DenseIntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]])
    }
    pub fn z2() -> DenseIntMatrix {
        DenseIntMatrix::from_rows(&[vec![1, 0], vec![0, -1]])
    }
    /// Projector onto the first basis vector.
    pub fn p2() -> DenseIntMatrix {
        DenseIntMatrix::from_rows(&[vec![1, 0], vec![0, 0]])
    }
    /// Projector onto the second basis vector.
    pub fn q2() -> DenseIntMatrix {
        DenseIntMatrix::from_rows(&[vec![0, 0], vec![0, 1]])
    }
    pub fn o2() -> DenseIntMatrix {
        DenseIntMatrix::zeros(2)
    }
}
