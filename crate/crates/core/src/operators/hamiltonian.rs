use crate::basis::{BasisTruncation, PhysicalParams};
use crate::error::Result;
use crate::matrix::HermitianOperator;
use crate::scalar::Real;

/// Free rotor Hamiltonian, diagonal with entries ħ²k²/(2mr²).
pub fn free_hamiltonian<T: Real>(
    basis: BasisTruncation,
    p: &PhysicalParams<T>,
) -> Result<HermitianOperator<T>> {
    p.validate()?;
    let scale = p.hbar * p.hbar / (T::lit(2.0) * p.inertia());
    let diag: Vec<T> = basis
        .momenta()
        .map(|k| {
            let kf = T::from_index(k);
            scale * kf * kf
        })
        .collect();
    HermitianOperator::from_real_diagonal(basis, &diag)
}
