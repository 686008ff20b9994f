//! Normalized states in the angular-momentum basis.

use num_complex::Complex;

use crate::basis::BasisTruncation;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance on | ‖ψ‖ - 1 |.
pub fn normalization_tolerance<T: Real>() -> T {
    T::tol(1e-10)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    basis: BasisTruncation,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that are already normalized.
    pub fn new(basis: BasisTruncation, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != basis.dimension() {
            return Err(Error::DimensionMismatch {
                expected: basis.dimension(),
                found: amplitudes.len(),
            });
        }
        let norm = norm(&amplitudes);
        if !((norm - T::one()).abs() <= normalization_tolerance::<T>()) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { basis, amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(basis: BasisTruncation, mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let n = norm(&amplitudes);
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::NotNormalized(n.as_f64()));
        }
        for a in &mut amplitudes {
            *a /= n;
        }
        Self::new(basis, amplitudes)
    }

    /// The eigenstate |k⟩.
    pub fn basis_state(basis: BasisTruncation, k: i64) -> Result<Self> {
        let row = basis
            .row(k)
            .ok_or_else(|| Error::Domain(format!("k = {k} outside the basis")))?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); basis.dimension()];
        amps[row] = Complex::new(T::one(), T::zero());
        Self::new(basis, amps)
    }

    /// Σ c_k |k⟩ normalized, from (k, c_k) pairs.
    pub fn superposition(basis: BasisTruncation, terms: &[(i64, Complex<T>)]) -> Result<Self> {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); basis.dimension()];
        for &(k, c) in terms {
            let row = basis
                .row(k)
                .ok_or_else(|| Error::Domain(format!("k = {k} outside the basis")))?;
            amps[row] += c;
        }
        Self::normalized(basis, amps)
    }

    /// Momentum-space Gaussian packet
    /// ψ_k ∝ exp(-(k - k̄)²/(4s²) - i k θ₀), centred at angle θ₀ with mean
    /// angular momentum k̄ħ and momentum spread s.
    pub fn gaussian_packet(
        basis: BasisTruncation,
        k_mean: T,
        spread: T,
        theta0: T,
    ) -> Result<Self> {
        if !(spread > T::zero()) {
            return Err(Error::Domain(format!(
                "packet spread must be positive, got {spread}"
            )));
        }
        let four_s2 = T::lit(4.0) * spread * spread;
        let amps = basis
            .momenta()
            .map(|k| {
                let kf = T::from_index(k);
                let d = kf - k_mean;
                Complex::from_polar((-(d * d) / four_s2).exp(), -kf * theta0)
            })
            .collect();
        Self::normalized(basis, amps)
    }

    pub fn basis(&self) -> BasisTruncation {
        self.basis
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Position probabilities |⟨θ_m|ψ⟩|² Δθ on the midpoint grid
    /// θ_m = -π + (m + ½)Δθ, Δθ = 2π/grid_size, with ⟨θ|k⟩ = e^{ikθ}/√(2π).
    pub fn position_density(&self, grid_size: usize) -> Result<Vec<T>> {
        position_density(self, grid_size)
    }
}

pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
}

pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |s, (x, y)| {
            s + x.conj() * y
        })
}

/// Midpoint angle grid used for position-space quantities.
pub fn angle_grid<T: Real>(grid_size: usize) -> Vec<T> {
    let h = (T::PI() + T::PI()) / T::from_usize(grid_size).expect("grid size");
    (0..grid_size)
        .map(|m| -T::PI() + (T::from_usize(m).expect("index") + T::lit(0.5)) * h)
        .collect()
}

pub fn position_density<T: Real>(psi: &StateVector<T>, grid_size: usize) -> Result<Vec<T>> {
    let dim = psi.basis().dimension();
    if grid_size < dim {
        return Err(Error::Domain(format!(
            "grid size {grid_size} is smaller than the basis dimension {dim}"
        )));
    }
    let inv = T::one() / T::from_usize(grid_size).expect("grid size");
    let momenta: Vec<T> = psi.basis().momenta().map(T::from_index).collect();
    Ok(angle_grid::<T>(grid_size)
        .into_iter()
        .map(|theta| {
            let amp = psi
                .amplitudes()
                .iter()
                .zip(&momenta)
                .fold(Complex::new(T::zero(), T::zero()), |s, (&c, &k)| {
                    s + c * Complex::from_polar(T::one(), k * theta)
                });
            // |amp|²/(2π) · Δθ
            amp.norm_sqr() * inv
        })
        .collect())
}
