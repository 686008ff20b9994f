//! Dense complex matrices in the angular-momentum basis.

use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::basis::BasisTruncation;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            let out_row = &mut out.data[r * n..(r + 1) * n];
            for (l, &a) in self.row(r).iter().enumerate() {
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(l)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.dim, v.len(), "matvec dimension mismatch");
        (0..self.dim)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (&a, &x)| {
                        acc + a * x
                    })
            })
            .collect()
    }

    /// Scales column `c` by `s`.
    pub fn scale_column(&mut self, c: usize, s: Complex<T>) {
        for r in 0..self.dim {
            self[(r, c)] *= s;
        }
    }

    pub fn scale_columns(&self, s: &[T]) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] * s[c])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] - rhs[(r, c)])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] + rhs[(r, c)])
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// max_{j,k} |A[j][k] - conj(A[k][j])|.
    pub fn hermiticity_residual(&self) -> T {
        let mut res = T::zero();
        for r in 0..self.dim {
            for c in r..self.dim {
                res = res.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        res
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |s, z| s + z.norm_sqr())
            .sqrt()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |s, i| s + self[(i, i)])
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| r == c || self[(r, c)] == Complex::new(T::zero(), T::zero()))
        })
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.dim + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.dim + c]
    }
}

/// Tolerance of the Hermiticity check, relative to `1 + max|A|`.
pub fn hermiticity_tolerance<T: Real>() -> T {
    T::tol(1e-10)
}

/// A matrix in a truncated angular-momentum basis that satisfies
/// `max |A[j][k] - conj(A[k][j])| <= 1e-10 (1 + max|A|)`.
///
/// On construction the matrix is replaced by its Hermitian part, so the
/// stored entries are exactly Hermitian; the residual of the matrix as
/// supplied is kept in [`HermitianOperator::source_residual`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T> {
    basis: BasisTruncation,
    matrix: ComplexMatrix<T>,
    source_residual: T,
}

impl<T: Real> HermitianOperator<T> {
    pub fn new(basis: BasisTruncation, matrix: ComplexMatrix<T>) -> Result<Self> {
        if matrix.dim() != basis.dimension() {
            return Err(Error::DimensionMismatch {
                expected: basis.dimension(),
                found: matrix.dim(),
            });
        }
        let residual = matrix.hermiticity_residual();
        let tolerance = hermiticity_tolerance::<T>() * (T::one() + matrix.max_abs());
        if !(residual <= tolerance) {
            return Err(Error::NonHermitian {
                residual: residual.as_f64(),
                tolerance: tolerance.as_f64(),
            });
        }
        let half = T::lit(0.5);
        let sym = ComplexMatrix::from_fn(matrix.dim(), |r, c| {
            if r == c {
                Complex::new(matrix[(r, r)].re, T::zero())
            } else {
                (matrix[(r, c)] + matrix[(c, r)].conj()) * half
            }
        });
        Ok(Self {
            basis,
            matrix: sym,
            source_residual: residual,
        })
    }

    pub fn from_real_diagonal(basis: BasisTruncation, diag: &[T]) -> Result<Self> {
        Self::new(basis, ComplexMatrix::from_diagonal(diag))
    }

    pub fn identity(basis: BasisTruncation) -> Self {
        Self {
            basis,
            matrix: ComplexMatrix::identity(basis.dimension()),
            source_residual: T::zero(),
        }
    }

    pub fn basis(&self) -> BasisTruncation {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    /// Matrix element <j|A|k> addressed by angular-momentum quantum numbers.
    pub fn element(&self, j: i64, k: i64) -> Option<Complex<T>> {
        Some(self.matrix[(self.basis.row(j)?, self.basis.row(k)?)])
    }

    pub fn hermiticity_residual(&self) -> T {
        self.matrix.hermiticity_residual()
    }

    /// max |A[j][k] - conj(A[k][j])| of the matrix passed to `new`.
    pub fn source_residual(&self) -> T {
        self.source_residual
    }

    /// <psi|A|psi>, real for Hermitian A.
    pub fn expectation(&self, psi: &[Complex<T>]) -> T {
        let av = self.matrix.matvec(psi);
        psi.iter()
            .zip(&av)
            .fold(T::zero(), |s, (a, b)| s + (a.conj() * b).re)
    }
}
