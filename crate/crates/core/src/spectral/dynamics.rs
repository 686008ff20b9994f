//! Unitary time evolution exp(-iĤt/ħ) and the time-translation check.

use num_complex::Complex;

use crate::basis::PhysicalParams;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::spectral::decomposition::{eigendecompose_hermitian, SpectralDecomposition};
use crate::spectral::state::StateVector;

/// exp(-iĤt/ħ) for a fixed Hamiltonian. Diagonal Hamiltonians are
/// exponentiated entrywise; others through their eigendecomposition.
#[derive(Debug, Clone)]
pub struct Propagator<T> {
    energies: Vec<T>,
    /// Eigenvectors when Ĥ is not diagonal in the basis.
    modes: Option<ComplexMatrix<T>>,
    hbar: T,
}

impl<T: Real> Propagator<T> {
    pub fn new(h: &HermitianOperator<T>, p: &PhysicalParams<T>) -> Result<Self> {
        p.validate()?;
        if h.matrix().is_diagonal() {
            Ok(Self {
                energies: h.matrix().diagonal().iter().map(|z| z.re).collect(),
                modes: None,
                hbar: p.hbar,
            })
        } else {
            let d = eigendecompose_hermitian(h)?;
            Ok(Self {
                energies: d.eigenvalues().to_vec(),
                modes: Some(d.eigenvectors().clone()),
                hbar: p.hbar,
            })
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    fn phases(&self, t: T) -> Vec<Complex<T>> {
        self.energies
            .iter()
            .map(|&e| Complex::from_polar(T::one(), -e * t / self.hbar))
            .collect()
    }

    /// exp(-iĤt/ħ) ψ.
    pub fn apply(&self, psi: &[Complex<T>], t: T) -> Vec<Complex<T>> {
        let ph = self.phases(t);
        match &self.modes {
            None => psi.iter().zip(&ph).map(|(&a, &p)| a * p).collect(),
            Some(v) => {
                let coeffs = v.adjoint().matvec(psi);
                let rotated: Vec<Complex<T>> =
                    coeffs.iter().zip(&ph).map(|(&a, &p)| a * p).collect();
                v.matvec(&rotated)
            }
        }
    }

    /// exp(-iĤt/ħ) as a matrix.
    pub fn matrix(&self, t: T) -> ComplexMatrix<T> {
        let ph = self.phases(t);
        let n = self.dim();
        match &self.modes {
            None => ComplexMatrix::from_fn(n, |r, c| {
                if r == c {
                    ph[r]
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            }),
            Some(v) => {
                let mut vp = v.clone();
                for (c, &p) in ph.iter().enumerate() {
                    vp.scale_column(c, p);
                }
                vp.matmul(&v.adjoint())
            }
        }
    }
}

pub fn evolve<T: Real>(
    psi: &StateVector<T>,
    h: &HermitianOperator<T>,
    t: T,
    p: &PhysicalParams<T>,
) -> Result<StateVector<T>> {
    if h.basis() != psi.basis() {
        return Err(Error::DimensionMismatch {
            expected: psi.basis().dimension(),
            found: h.dim(),
        });
    }
    let prop = Propagator::new(h, p)?;
    StateVector::new(psi.basis(), prop.apply(psi.amplitudes(), t))
}

/// Overlaps c_{lk}(t) = |⟨τ_l| e^{-iĤt/ħ} |τ_k⟩|² of evolved eigenvectors
/// with the unevolved eigenbasis.
#[derive(Debug, Clone)]
pub struct TimeTranslationReport<T> {
    pub time: T,
    /// max_l c_{lk}(t), one per eigenvector k.
    pub max_overlap: Vec<T>,
    /// Σ_l c_{lk}(t), one per eigenvector k; 1 up to rounding.
    pub overlap_sums: Vec<T>,
}

impl<T: Real> TimeTranslationReport<T> {
    /// Eigenvectors whose evolved image is farther than `delta` from every
    /// eigenvector: max_l c_{lk} < 1 - delta.
    pub fn non_invariant(&self, delta: T) -> Vec<usize> {
        self.max_overlap
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < T::one() - delta)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn min_max_overlap(&self) -> T {
        self.max_overlap
            .iter()
            .fold(T::infinity(), |m, &c| m.min(c))
    }

    pub fn max_sum_deviation(&self) -> T {
        self.overlap_sums
            .iter()
            .fold(T::zero(), |m, &s| m.max((s - T::one()).abs()))
    }
}

/// Default δ of the non-invariance certificate.
pub const NON_INVARIANCE_DELTA: f64 = 1e-3;

pub fn time_translation_report<T: Real>(
    d: &SpectralDecomposition<T>,
    h: &HermitianOperator<T>,
    t: T,
    p: &PhysicalParams<T>,
) -> Result<TimeTranslationReport<T>> {
    if h.basis() != d.basis() {
        return Err(Error::DimensionMismatch {
            expected: d.basis().dimension(),
            found: h.dim(),
        });
    }
    let u = Propagator::new(h, p)?.matrix(t);
    let v = d.eigenvectors();
    let overlaps = v.adjoint().matmul(&u.matmul(v));
    let n = v.dim();
    let mut max_overlap = Vec::with_capacity(n);
    let mut overlap_sums = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = T::zero();
        let mut sum = T::zero();
        for l in 0..n {
            let c = overlaps[(l, k)].norm_sqr();
            best = best.max(c);
            sum += c;
        }
        max_overlap.push(best);
        overlap_sums.push(sum);
    }
    Ok(TimeTranslationReport {
        time: t,
        max_overlap,
        overlap_sums,
    })
}
