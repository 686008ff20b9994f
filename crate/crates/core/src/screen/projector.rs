//! Screen projector Ê and the survival operator Ê'.
//!
//! Ê is diagonal in the discrete position basis
//! |θ_m⟩ = (2N+1)^{-1/2} Σ_k e^{-ikθ_m} |k⟩ on the midpoint grid of 2N+1
//! angles. That basis is orthonormal, so Ê is an exact projector whose rank
//! is the number of grid angles inside the arc.

use num_complex::Complex;

use crate::basis::{BasisTruncation, PhysicalParams};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::screen::config::{AbsorberMode, ScreenConfig};
use crate::spectral::angle_grid;
use crate::spectral::eigen::hermitian_eigen;

pub fn screen_projector<T: Real>(
    cfg: &ScreenConfig<T>,
    basis: BasisTruncation,
) -> Result<HermitianOperator<T>> {
    cfg.validate()?;
    let dim = basis.dimension();
    let inside: Vec<T> = angle_grid::<T>(dim)
        .into_iter()
        .filter(|&t| cfg.contains(t))
        .collect();
    if inside.is_empty() {
        return Err(Error::EmptyArc(cfg.arc.0.as_f64(), cfg.arc.1.as_f64()));
    }
    let inv = T::one() / T::from_usize(dim).expect("dimension");
    let m = ComplexMatrix::from_fn(dim, |r, c| {
        let d = T::from_index(basis.momentum(c) - basis.momentum(r));
        inside
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |s, &theta| {
                s + Complex::from_polar(inv, d * theta)
            })
    });
    HermitianOperator::new(basis, m)
}

/// Ê' for the configured absorber mode.
pub fn reflector<T: Real>(
    e: &HermitianOperator<T>,
    cfg: &ScreenConfig<T>,
    p: &PhysicalParams<T>,
) -> Result<ComplexMatrix<T>> {
    cfg.validate()?;
    p.validate()?;
    let dim = e.dim();
    let id = ComplexMatrix::identity(dim);
    match &cfg.absorber {
        AbsorberMode::Projector => Ok(id.sub(e.matrix())),
        AbsorberMode::ComplexPotential { v0 } => {
            let damping = (-*v0 * cfg.eta / p.hbar).exp();
            let scaled =
                ComplexMatrix::from_fn(dim, |r, c| e.matrix()[(r, c)] * (damping - T::one()));
            Ok(id.add(&scaled))
        }
        AbsorberMode::Custom(m) => {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            check_contraction(m)?;
            Ok(m.clone())
        }
    }
}

/// Fails unless ‖Mψ‖ <= ‖ψ‖ for all ψ, i.e. the largest eigenvalue of M†M
/// is at most 1.
pub fn check_contraction<T: Real>(m: &ComplexMatrix<T>) -> Result<()> {
    let gram = m.adjoint().matmul(m);
    let (values, _) = hermitian_eigen(&gram)?;
    let top = values.iter().fold(T::zero(), |a, &b| a.max(b));
    if top > T::one() + T::tol(1e-12) {
        return Err(Error::ContractionViolation(top.sqrt().as_f64()));
    }
    Ok(())
}
