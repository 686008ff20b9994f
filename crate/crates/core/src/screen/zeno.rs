//! Zeno time and the continuous-observation limit.

use crate::basis::PhysicalParams;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::spectral::state::norm;
use crate::spectral::{Propagator, StateVector};

/// τ_z = ħ/ΔH with ΔH² = ⟨Ĥ²⟩ - ⟨Ĥ⟩². Returns `+∞` when
/// ΔH <= 1e-12 (1 + |⟨Ĥ⟩|), e.g. for an energy eigenstate.
pub fn zeno_time<T: Real>(
    psi: &StateVector<T>,
    h: &HermitianOperator<T>,
    p: &PhysicalParams<T>,
) -> Result<T> {
    p.validate()?;
    if psi.basis() != h.basis() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: psi.amplitudes().len(),
        });
    }
    let amps = psi.amplitudes();
    let mean = h.expectation(amps);
    // ‖(Ĥ - ⟨Ĥ⟩)ψ‖ avoids the cancellation in ⟨Ĥ²⟩ - ⟨Ĥ⟩².
    let hv = h.matrix().matvec(amps);
    let centred: Vec<_> = hv.iter().zip(amps).map(|(&a, &b)| a - b * mean).collect();
    let spread = norm(&centred);
    if spread <= T::tol(1e-12) * (T::one() + mean.abs()) {
        return Ok(T::infinity());
    }
    Ok(p.hbar / spread)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoRow<T> {
    pub steps: usize,
    pub step_length: T,
    /// Probability of absorption at the final measurement t = n (t/n).
    pub probability: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZenoScan<T> {
    pub total_time: T,
    pub rows: Vec<ZenoRow<T>>,
}

impl<T: Real> ZenoScan<T> {
    /// True when P_n does not increase along rows with n >= `from`.
    pub fn nonincreasing_from(&self, from: usize) -> bool {
        let tail: Vec<T> = self
            .rows
            .iter()
            .filter(|r| r.steps >= from)
            .map(|r| r.probability)
            .collect();
        tail.windows(2).all(|w| w[1] <= w[0])
    }

    /// Smallest n after which the probabilities never increase.
    pub fn monotone_onset(&self) -> Option<usize> {
        self.rows
            .iter()
            .map(|r| r.steps)
            .find(|&n| self.nonincreasing_from(n))
    }

    pub fn last(&self) -> Option<&ZenoRow<T>> {
        self.rows.last()
    }
}

/// P_n(t) of n equally spaced projective measurements in [0, t], for each
/// n in `n_list`. The Zeno-time precondition is deliberately not applied.
pub fn zeno_limit_scan<T: Real>(
    psi: &StateVector<T>,
    e: &HermitianOperator<T>,
    h: &HermitianOperator<T>,
    p: &PhysicalParams<T>,
    total_time: T,
    n_list: &[usize],
) -> Result<ZenoScan<T>> {
    if !(total_time > T::zero()) {
        return Err(Error::Domain(format!(
            "total time must be positive, got {total_time}"
        )));
    }
    if n_list.contains(&0) {
        return Err(Error::Domain("step counts must be positive".into()));
    }
    if psi.basis() != e.basis() || h.basis() != e.basis() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: h.dim(),
        });
    }
    let prop = Propagator::new(h, p)?;
    let spectrum_min = if h.matrix().is_diagonal() {
        h.matrix()
            .diagonal()
            .iter()
            .fold(T::infinity(), |m, z| m.min(z.re))
    } else {
        crate::spectral::eigendecompose_hermitian(h)?
            .eigenvalues()
            .iter()
            .fold(T::infinity(), |m, &v| m.min(v))
    };
    if spectrum_min < -T::tol(1e-12) * (T::one() + h.matrix().max_abs()) {
        return Err(Error::Domain(format!(
            "Hamiltonian must be nonnegative, found eigenvalue {spectrum_min}"
        )));
    }
    let ep = ComplexMatrix::identity(e.dim()).sub(e.matrix());

    let rows = n_list
        .iter()
        .map(|&n| {
            let step = total_time / T::from_usize(n).expect("step count");
            let mut amps = psi.amplitudes().to_vec();
            for _ in 0..n {
                amps = prop.apply(&ep.matvec(&amps), step);
            }
            ZenoRow {
                steps: n,
                step_length: step,
                probability: e.expectation(&amps).max(T::zero()),
            }
        })
        .collect();
    Ok(ZenoScan { total_time, rows })
}

/// 1, 2, 4, ... up to and including `max` (if a power of two).
pub fn doubling_ladder(max: usize) -> Vec<usize> {
    std::iter::successors(Some(1usize), |&n| n.checked_mul(2))
        .take_while(|&n| n <= max)
        .collect()
}
