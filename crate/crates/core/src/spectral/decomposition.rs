use std::cmp::Ordering;

use num_complex::Complex;

use crate::basis::BasisTruncation;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::spectral::eigen::hermitian_eigen;

/// Eigenvalues sorted descending with eigenvectors as matching columns.
///
/// Each eigenvector's entry of largest modulus is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T> {
    basis: BasisTruncation,
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

/// Counts of positive, negative and (near-)zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCensus {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Handling of negative eigenvalues by [`SpectralDecomposition::transform`]
/// when the function is only defined on [0, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativePolicy {
    #[default]
    Reject,
    ClampToZero,
}

pub fn eigendecompose_hermitian<T: Real>(
    a: &HermitianOperator<T>,
) -> Result<SpectralDecomposition<T>> {
    let residual = a.hermiticity_residual();
    let tolerance = crate::matrix::hermiticity_tolerance::<T>() * (T::one() + a.matrix().max_abs());
    if !(residual <= tolerance) {
        return Err(Error::NonHermitian {
            residual: residual.as_f64(),
            tolerance: tolerance.as_f64(),
        });
    }
    let (values, vectors) = hermitian_eigen(a.matrix())?;
    Ok(SpectralDecomposition::from_unsorted(
        a.basis(),
        values,
        vectors,
    ))
}

impl<T: Real> SpectralDecomposition<T> {
    fn from_unsorted(basis: BasisTruncation, values: Vec<T>, vectors: ComplexMatrix<T>) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        // stable: equal values keep ascending original index
        order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(Ordering::Equal));
        let eigenvalues = order.iter().map(|&i| values[i]).collect();
        let mut eigenvectors = ComplexMatrix::from_fn(n, |r, c| vectors[(r, order[c])]);
        for c in 0..n {
            let mut best = 0;
            let mut best_mod = T::zero();
            for r in 0..n {
                let m = eigenvectors[(r, c)].norm();
                if m > best_mod {
                    best_mod = m;
                    best = r;
                }
            }
            if best_mod > T::zero() {
                let ph = eigenvectors[(best, c)].conj() / best_mod;
                eigenvectors.scale_column(c, ph);
                eigenvectors[(best, c)] = Complex::new(eigenvectors[(best, c)].re, T::zero());
            }
        }
        Self {
            basis,
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn basis(&self) -> BasisTruncation {
        self.basis
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    /// Column `k` as a vector of amplitudes.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.eigenvectors.dim())
            .map(|r| self.eigenvectors[(r, k)])
            .collect()
    }

    /// max |V†V - I|.
    pub fn orthonormality_residual(&self) -> T {
        let n = self.eigenvectors.dim();
        self.eigenvectors
            .adjoint()
            .matmul(&self.eigenvectors)
            .max_abs_diff(&ComplexMatrix::identity(n))
    }

    /// V diag(τ) V†.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.eigenvectors
            .scale_columns(&self.eigenvalues)
            .matmul(&self.eigenvectors.adjoint())
    }

    /// max |A - V diag(τ) V†| / (1 + max|A|).
    pub fn reconstruction_residual(&self, a: &HermitianOperator<T>) -> T {
        self.reconstruct().max_abs_diff(a.matrix()) / (T::one() + a.matrix().max_abs())
    }

    /// sqrt(Σ τ_k²).
    pub fn spectral_norm_l2(&self) -> T {
        self.eigenvalues
            .iter()
            .fold(T::zero(), |s, &t| s + t * t)
            .sqrt()
    }

    /// #{k : |τ_k| > λ}; λ must be positive.
    pub fn count_above(&self, lambda: T) -> Result<usize> {
        if !(lambda > T::zero()) {
            return Err(Error::Domain(format!(
                "threshold must be positive, got {lambda}"
            )));
        }
        Ok(self.eigenvalues.iter().filter(|t| t.abs() > lambda).count())
    }

    pub fn sign_census(&self, zero_tol: T) -> SignCensus {
        let mut c = SignCensus {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for &t in &self.eigenvalues {
            if t.abs() <= zero_tol {
                c.zero += 1;
            } else if t > T::zero() {
                c.positive += 1;
            } else {
                c.negative += 1;
            }
        }
        c
    }

    /// Σ_k f(τ_k) |τ_k⟩⟨τ_k| for f defined on [0, ∞) (e.g. sqrt).
    pub fn transform(
        &self,
        f: impl Fn(T) -> T,
        policy: NegativePolicy,
    ) -> Result<HermitianOperator<T>> {
        let mapped = self
            .eigenvalues
            .iter()
            .map(|&t| {
                if t < T::zero() {
                    match policy {
                        NegativePolicy::Reject => Err(Error::NegativeEigenvalue(t.as_f64())),
                        NegativePolicy::ClampToZero => Ok(f(T::zero())),
                    }
                } else {
                    Ok(f(t))
                }
            })
            .collect::<Result<Vec<T>>>()?;
        let m = self
            .eigenvectors
            .scale_columns(&mapped)
            .matmul(&self.eigenvectors.adjoint());
        HermitianOperator::new(self.basis, m)
    }
}

/// sqrt(Σ_{j,k} |A[j][k]|²).
pub fn hilbert_schmidt_norm<T: Real>(a: &HermitianOperator<T>) -> T {
    a.matrix().frobenius_norm()
}

pub fn count_eigenvalues_above<T: Real>(d: &SpectralDecomposition<T>, lambda: T) -> Result<usize> {
    d.count_above(lambda)
}

pub fn sign_census<T: Real>(d: &SpectralDecomposition<T>, zero_tol: T) -> SignCensus {
    d.sign_census(zero_tol)
}

/// Square root of the operator on its nonnegative spectrum.
pub fn spectral_sqrt<T: Real>(
    d: &SpectralDecomposition<T>,
    policy: NegativePolicy,
) -> Result<HermitianOperator<T>> {
    d.transform(|t| t.sqrt(), policy)
}
