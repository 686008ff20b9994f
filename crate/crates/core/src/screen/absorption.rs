//! Absorption probabilities of the repeatedly measured screen, the
//! operator-valued measure they define, and the mean arrival time.
//!
//! With ψ_0 = Φ_in and ψ_{j} = e^{-iĤ(t_j - t_{j-1})/ħ} Ê' ψ_{j-1}, the
//! probability of absorption at t_j is P_j = ⟨ψ_j|Ê|ψ_j⟩.

use std::fmt;

use num_complex::Complex;

use crate::basis::PhysicalParams;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::screen::config::{AbsorberMode, ScreenConfig};
use crate::screen::zeno::zeno_time;
use crate::spectral::state::{norm, normalization_tolerance};
use crate::spectral::{Propagator, StateVector};

/// Whether the detection probabilities exhaust the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// ΣP_j reached 1 within tolerance.
    Pov,
    /// Some probability is never absorbed.
    Gpov,
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pov => "POV",
            Self::Gpov => "GPOV",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionRecord<T> {
    /// Measurement times t_0 = 0 < t_1 < ... < t_J.
    pub times: Vec<T>,
    /// P_0 ... P_J.
    pub probabilities: Vec<T>,
    /// ‖ψ_j‖ along the survival chain, j = 0..=J.
    pub chain_norms: Vec<T>,
    /// 1 - ΣP_j.
    pub survival: T,
    pub mode: MeasureKind,
    /// Mean arrival time; `None` when nothing is absorbed.
    pub tau_mean: Option<T>,
}

impl<T: Real> AbsorptionRecord<T> {
    /// Builds a record from given probabilities on the uniform grid t_j = jη.
    pub fn from_probabilities(probabilities: Vec<T>, eta: T, pov_tolerance: T) -> Result<Self> {
        let times = (0..probabilities.len())
            .map(|j| T::from_usize(j).expect("index") * eta)
            .collect();
        Self::assemble(times, probabilities, Vec::new(), pov_tolerance)
    }

    /// Builds a record from probabilities at arbitrary measurement times.
    pub fn from_timed_probabilities(
        times: Vec<T>,
        probabilities: Vec<T>,
        pov_tolerance: T,
    ) -> Result<Self> {
        Self::assemble(times, probabilities, Vec::new(), pov_tolerance)
    }

    fn assemble(
        times: Vec<T>,
        probabilities: Vec<T>,
        chain_norms: Vec<T>,
        pov_tolerance: T,
    ) -> Result<Self> {
        if times.len() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                found: probabilities.len(),
            });
        }
        for &p in &probabilities {
            if !(p >= T::zero() && p <= T::one() + T::tol(1e-12)) {
                return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
            }
        }
        let total = probabilities.iter().fold(T::zero(), |s, &p| s + p);
        let mode = if total >= T::one() - pov_tolerance {
            MeasureKind::Pov
        } else {
            MeasureKind::Gpov
        };
        let mut rec = Self {
            times,
            probabilities,
            chain_norms,
            survival: T::one() - total,
            mode,
            tau_mean: None,
        };
        rec.tau_mean = average_arrival_time(&rec).ok().map(|(t, _)| t);
        Ok(rec)
    }

    pub fn total(&self) -> T {
        self.probabilities.iter().fold(T::zero(), |s, &p| s + p)
    }

    /// Σ t_j P_j.
    pub fn unnormalized_mean(&self) -> T {
        self.times
            .iter()
            .zip(&self.probabilities)
            .fold(T::zero(), |s, (&t, &p)| s + t * p)
    }

    /// Σ t_j P_j / Σ P_j.
    pub fn normalized_mean(&self) -> Result<T> {
        let total = self.total();
        if total == T::zero() {
            return Err(Error::UndefinedAverage);
        }
        Ok(self.unnormalized_mean() / total)
    }

    /// Running sums of P_j.
    pub fn cumulative(&self) -> Vec<T> {
        self.probabilities
            .iter()
            .scan(T::zero(), |s, &p| {
                *s += p;
                Some(*s)
            })
            .collect()
    }
}

/// Mean arrival time: Σ t_j P_j when the record is a POV measure, otherwise
/// Σ t_j P_j / Σ P_j. Returns the value and the kind used.
pub fn average_arrival_time<T: Real>(rec: &AbsorptionRecord<T>) -> Result<(T, MeasureKind)> {
    match rec.mode {
        MeasureKind::Pov => {
            if rec.total() == T::zero() {
                return Err(Error::UndefinedAverage);
            }
            Ok((rec.unnormalized_mean(), MeasureKind::Pov))
        }
        MeasureKind::Gpov => Ok((rec.normalized_mean()?, MeasureKind::Gpov)),
    }
}

fn check_state<T: Real>(psi: &StateVector<T>, e: &HermitianOperator<T>) -> Result<()> {
    if psi.basis() != e.basis() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: psi.amplitudes().len(),
        });
    }
    let n = psi.norm();
    if !((n - T::one()).abs() <= normalization_tolerance::<T>()) {
        return Err(Error::NotNormalized(n.as_f64()));
    }
    Ok(())
}

/// P_j for measurements at the given increasing times (t_0 = 0).
pub fn absorption_chain<T: Real>(
    psi_in: &StateVector<T>,
    e: &HermitianOperator<T>,
    ep: &ComplexMatrix<T>,
    propagator: &Propagator<T>,
    times: &[T],
    pov_tolerance: T,
) -> Result<AbsorptionRecord<T>> {
    check_state(psi_in, e)?;
    if ep.dim() != e.dim() || propagator.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: ep.dim().max(propagator.dim()),
        });
    }
    if times.first() != Some(&T::zero()) {
        return Err(Error::Domain("measurement times must start at 0".into()));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(
            "measurement times must be strictly increasing".into(),
        ));
    }

    let mut psi: Vec<Complex<T>> = psi_in.amplitudes().to_vec();
    let mut probabilities = Vec::with_capacity(times.len());
    let mut chain_norms = Vec::with_capacity(times.len());
    for (j, &t) in times.iter().enumerate() {
        if j > 0 {
            psi = propagator.apply(&ep.matvec(&psi), t - times[j - 1]);
        }
        chain_norms.push(norm(&psi));
        probabilities.push(e.expectation(&psi).max(T::zero()));
    }
    AbsorptionRecord::assemble(times.to_vec(), probabilities, chain_norms, pov_tolerance)
}

/// Uniform-cadence absorption run: t_j = jη for j = 0..=J.
///
/// Enforces η > τ_z(Φ_in) unless `cfg.override_zeno` is set.
pub fn absorption_probabilities<T: Real>(
    psi_in: &StateVector<T>,
    e: &HermitianOperator<T>,
    ep: &ComplexMatrix<T>,
    h: &HermitianOperator<T>,
    cfg: &ScreenConfig<T>,
    p: &PhysicalParams<T>,
) -> Result<AbsorptionRecord<T>> {
    cfg.validate()?;
    check_state(psi_in, e)?;
    if !cfg.override_zeno {
        let tau_z = zeno_time(psi_in, h, p)?;
        if !(cfg.eta > tau_z) {
            return Err(Error::ZenoGate {
                eta: cfg.eta.as_f64(),
                tau_z: tau_z.as_f64(),
            });
        }
    }
    let prop = Propagator::new(h, p)?;
    let times: Vec<T> = (0..=cfg.steps)
        .map(|j| T::from_usize(j).expect("index") * cfg.eta)
        .collect();
    absorption_chain(psi_in, e, ep, &prop, &times, cfg.pov_tolerance)
}

/// Provable upper bound on ΣP_j for the configured absorber: 1 for the
/// projector, 1/(1 - e^{-2V₀η/ħ}) for the absorbing potential, where the
/// residual screen amplitude can be counted again, and unbounded otherwise.
pub fn total_probability_bound<T: Real>(cfg: &ScreenConfig<T>, p: &PhysicalParams<T>) -> T {
    match cfg.absorber {
        AbsorberMode::Projector => T::one(),
        AbsorberMode::ComplexPotential { v0 } => {
            let damping = (-T::lit(2.0) * v0 * cfg.eta / p.hbar).exp();
            T::one() / (T::one() - damping)
        }
        AbsorberMode::Custom(_) => T::infinity(),
    }
}

/// (e^{-iηĤ/ħ} Ê')^j.
pub fn survival_map<T: Real>(
    ep: &ComplexMatrix<T>,
    propagator: &Propagator<T>,
    eta: T,
    j: usize,
) -> ComplexMatrix<T> {
    let step = propagator.matrix(eta).matmul(ep);
    let mut m = ComplexMatrix::identity(ep.dim());
    for _ in 0..j {
        m = step.matmul(&m);
    }
    m
}

/// F_j = (Ê'† e^{iηĤ/ħ})^j Ê (e^{-iηĤ/ħ} Ê')^j.
pub fn pov_element<T: Real>(
    e: &HermitianOperator<T>,
    ep: &ComplexMatrix<T>,
    propagator: &Propagator<T>,
    eta: T,
    j: usize,
) -> Result<HermitianOperator<T>> {
    let m = survival_map(ep, propagator, eta, j);
    HermitianOperator::new(e.basis(), m.adjoint().matmul(&e.matrix().matmul(&m)))
}

/// F_0 ... F_{count-1}, sharing the survival-map products.
pub fn pov_elements<T: Real>(
    e: &HermitianOperator<T>,
    ep: &ComplexMatrix<T>,
    propagator: &Propagator<T>,
    eta: T,
    count: usize,
) -> Result<Vec<HermitianOperator<T>>> {
    let step = propagator.matrix(eta).matmul(ep);
    let mut m = ComplexMatrix::identity(ep.dim());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(HermitianOperator::new(
            e.basis(),
            m.adjoint().matmul(&e.matrix().matmul(&m)),
        )?);
        m = step.matmul(&m);
    }
    Ok(out)
}

/// (Ê' e^{iηĤ/ħ})^{j} (e^{-iηĤ/ħ} Ê')^{j}: in projector mode,
/// Σ_{i<j} F_i plus this operator is the identity.
pub fn survival_operator<T: Real>(
    ep: &ComplexMatrix<T>,
    propagator: &Propagator<T>,
    eta: T,
    j: usize,
) -> ComplexMatrix<T> {
    let m = survival_map(ep, propagator, eta, j);
    m.adjoint().matmul(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisTruncation;
    use crate::operators::free_hamiltonian;
    use crate::screen::projector::{reflector, screen_projector};
    use std::f64::consts::PI;

    #[test]
    fn synthetic_averages() {
        let rec = AbsorptionRecord::from_probabilities(vec![1.0, 0.0, 0.0], 0.7, 1e-2).unwrap();
        assert_eq!(average_arrival_time(&rec).unwrap(), (0.0, MeasureKind::Pov));
        let rec = AbsorptionRecord::from_probabilities(vec![0.0, 0.0, 1.0], 0.5, 1e-2).unwrap();
        assert_eq!(average_arrival_time(&rec).unwrap(), (1.0, MeasureKind::Pov));
        let rec = AbsorptionRecord::from_probabilities(vec![0.25, 0.25], 1.0, 1e-2).unwrap();
        assert_eq!(
            average_arrival_time(&rec).unwrap(),
            (0.5, MeasureKind::Gpov)
        );
        assert_eq!(rec.tau_mean, Some(0.5));
        let rec = AbsorptionRecord::from_probabilities(vec![0.0, 0.0], 1.0, 1e-2).unwrap();
        assert!(matches!(
            average_arrival_time(&rec),
            Err(Error::UndefinedAverage)
        ));
        assert!(AbsorptionRecord::from_probabilities(vec![1.5], 1.0, 1e-2).is_err());
    }

    #[test]
    fn normalized_equals_unnormalized_at_unit_total() {
        let rec = AbsorptionRecord::from_probabilities(vec![0.5, 0.25, 0.25], 0.3, 1e-2).unwrap();
        assert_eq!(rec.total(), 1.0);
        assert_eq!(rec.normalized_mean().unwrap(), rec.unnormalized_mean());
    }

    #[test]
    fn full_and_empty_screens() {
        let b = BasisTruncation::new(4).unwrap();
        let p = PhysicalParams::<f64>::natural();
        let h = free_hamiltonian(b, &p).unwrap();
        let psi = StateVector::gaussian_packet(b, 1.0, 1.0, 0.5).unwrap();

        let cfg = ScreenConfig::new((-PI, PI), 0.5, 5, AbsorberMode::Projector)
            .unwrap()
            .with_zeno_override(true);
        let e = screen_projector(&cfg, b).unwrap();
        let ep = reflector(&e, &cfg, &p).unwrap();
        let rec = absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p).unwrap();
        assert!((rec.probabilities[0] - 1.0).abs() < 1e-13);
        assert!(rec.probabilities[1..].iter().all(|&x| x < 1e-13));
        assert_eq!(rec.mode, MeasureKind::Pov);
        assert!(rec.tau_mean.unwrap().abs() < 1e-12);

        let zero = HermitianOperator::new(b, ComplexMatrix::zeros(9)).unwrap();
        let ep = ComplexMatrix::identity(9);
        let rec = absorption_probabilities(&psi, &zero, &ep, &h, &cfg, &p).unwrap();
        assert!(rec.probabilities.iter().all(|&x| x == 0.0));
        assert_eq!(rec.survival, 1.0);
        assert_eq!(rec.mode, MeasureKind::Gpov);
        assert_eq!(rec.tau_mean, None);
    }

    #[test]
    fn zeno_gate() {
        let b = BasisTruncation::new(8).unwrap();
        let p = PhysicalParams::<f64>::natural();
        let h = free_hamiltonian(b, &p).unwrap();
        let psi = StateVector::gaussian_packet(b, 2.0, 1.0, 1.0).unwrap();
        let cfg = ScreenConfig::new((-0.5, 0.5), 1e-4, 5, AbsorberMode::Projector).unwrap();
        let e = screen_projector(&cfg, b).unwrap();
        let ep = reflector(&e, &cfg, &p).unwrap();
        assert!(matches!(
            absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p),
            Err(Error::ZenoGate { .. })
        ));
        let cfg = cfg.with_zeno_override(true);
        assert!(absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p).is_ok());
    }

    #[test]
    fn first_probability_is_screen_expectation() {
        let b = BasisTruncation::new(6).unwrap();
        let p = PhysicalParams::<f64>::natural();
        let h = free_hamiltonian(b, &p).unwrap();
        let psi = StateVector::gaussian_packet(b, 1.0, 1.5, 0.2).unwrap();
        let cfg = ScreenConfig::new((-0.6, 0.6), 0.3, 4, AbsorberMode::Projector)
            .unwrap()
            .with_zeno_override(true);
        let e = screen_projector(&cfg, b).unwrap();
        let ep = reflector(&e, &cfg, &p).unwrap();
        let rec = absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p).unwrap();
        assert!((rec.probabilities[0] - e.expectation(psi.amplitudes())).abs() < 1e-15);
    }

    #[test]
    fn chain_rejects_bad_times() {
        let b = BasisTruncation::new(2).unwrap();
        let p = PhysicalParams::<f64>::natural();
        let h = free_hamiltonian(b, &p).unwrap();
        let prop = Propagator::new(&h, &p).unwrap();
        let psi = StateVector::basis_state(b, 0).unwrap();
        let e = HermitianOperator::identity(b);
        let ep = ComplexMatrix::zeros(5);
        assert!(absorption_chain(&psi, &e, &ep, &prop, &[0.1, 0.2], 1e-2).is_err());
        assert!(absorption_chain(&psi, &e, &ep, &prop, &[0.0, 0.2, 0.2], 1e-2).is_err());
        assert!(absorption_chain(&psi, &e, &ep, &prop, &[0.0, 0.2, 0.5], 1e-2).is_ok());
    }
}
