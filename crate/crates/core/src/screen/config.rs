use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

/// What replaces the survival projector 1 - Ê between measurements.
#[derive(Debug, Clone, PartialEq)]
pub enum AbsorberMode<T> {
    /// Ê' = 1 - Ê.
    Projector,
    /// Ê' = 1 - Ê + exp(-V₀η/ħ) Ê, from the absorbing potential -iV₀ on the
    /// screen region.
    ComplexPotential { v0: T },
    /// User-supplied contraction (e.g. a partial state reduction).
    Custom(ComplexMatrix<T>),
}

impl<T: Real> AbsorberMode<T> {
    pub fn name(&self) -> String {
        match self {
            Self::Projector => "projector".into(),
            Self::ComplexPotential { v0 } => format!("complex:{v0}"),
            Self::Custom(_) => "custom".into(),
        }
    }
}

/// Default ΣP_j threshold above which the outcome family is a POV measure.
pub const POV_TOLERANCE: f64 = 1e-2;

/// Waiting-screen geometry and measurement cadence.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenConfig<T> {
    /// Detection arc (θ_a, θ_b) with -π <= θ_a < θ_b <= π.
    pub arc: (T, T),
    /// Time between measurements η.
    pub eta: T,
    /// Number of measurement steps J after the initial one.
    pub steps: usize,
    pub absorber: AbsorberMode<T>,
    /// ΣP_j >= 1 - pov_tolerance classifies the run as POV.
    pub pov_tolerance: T,
    /// Skip the η > τ_z precondition.
    pub override_zeno: bool,
}

impl<T: Real> ScreenConfig<T> {
    pub fn new(arc: (T, T), eta: T, steps: usize, absorber: AbsorberMode<T>) -> Result<Self> {
        let cfg = Self {
            arc,
            eta,
            steps,
            absorber,
            pov_tolerance: T::lit(POV_TOLERANCE),
            override_zeno: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_zeno_override(mut self, on: bool) -> Self {
        self.override_zeno = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pi = T::PI();
        let (a, b) = self.arc;
        if !(a >= -pi && b <= pi && a < b) {
            return Err(Error::InvalidScreen(format!(
                "arc ({a}, {b}) must satisfy -pi <= a < b <= pi"
            )));
        }
        if !(self.eta > T::zero()) || !self.eta.is_finite() {
            return Err(Error::InvalidScreen(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        if let AbsorberMode::ComplexPotential { v0 } = self.absorber {
            if !(v0 > T::zero()) || !v0.is_finite() {
                return Err(Error::InvalidScreen(format!(
                    "V0 must be positive, got {v0}"
                )));
            }
        }
        if !(self.pov_tolerance >= T::zero()) {
            return Err(Error::InvalidScreen(
                "POV tolerance must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    /// Whether the grid angle θ lies in the arc (left-closed).
    pub fn contains(&self, theta: T) -> bool {
        theta >= self.arc.0 && theta < self.arc.1
    }
}
