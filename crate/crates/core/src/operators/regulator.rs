//! Regulator g(θ) of the classical arrival time on the L = 0 fiber.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;

type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Nonnegative function on (-π, π].
#[derive(Clone)]
pub enum RegulatorFunction<T> {
    /// g ≡ c; Fourier coefficients are c δ_{l,0}.
    Constant(T),
    Custom {
        description: String,
        eval: RealFn<T>,
        /// Points where g is not smooth.
        breakpoints: Vec<T>,
    },
}

impl<T: Real> RegulatorFunction<T> {
    pub fn constant(c: T) -> Self {
        Self::Constant(c)
    }

    pub fn zero() -> Self {
        Self::Constant(T::zero())
    }

    pub fn custom(
        description: impl Into<String>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::Custom {
            description: description.into(),
            eval: Arc::new(f),
            breakpoints: Vec::new(),
        }
    }

    pub fn with_breakpoints(self, points: Vec<T>) -> Self {
        match self {
            Self::Custom {
                description, eval, ..
            } => Self::Custom {
                description,
                eval,
                breakpoints: points,
            },
            c => c,
        }
    }

    pub fn eval(&self, theta: T) -> T {
        match self {
            Self::Constant(c) => *c,
            Self::Custom { eval, .. } => eval(theta),
        }
    }

    pub fn breakpoints(&self) -> &[T] {
        match self {
            Self::Constant(_) => &[],
            Self::Custom { breakpoints, .. } => breakpoints,
        }
    }

    pub fn description(&self) -> String {
        match self {
            Self::Constant(c) => format!("const:{c}"),
            Self::Custom { description, .. } => description.clone(),
        }
    }

    /// (1/2π) ∫ g(θ) e^{-ilθ} dθ.
    pub fn fourier(&self, l: i64, quad: &QuadratureSpec) -> Complex<T> {
        match self {
            Self::Constant(c) => {
                if l == 0 {
                    Complex::new(*c, T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            }
            Self::Custom { .. } => {
                let rule = quad.rule(self.breakpoints());
                let samples: Vec<T> = rule.nodes.iter().map(|&x| self.eval(x)).collect();
                rule.fourier_of_samples(&samples, l)
            }
        }
    }

    /// Checks g >= 0 on the nodes of `quad`.
    pub fn validate(&self, quad: &QuadratureSpec) -> Result<()> {
        match self {
            Self::Constant(c) => {
                if !(*c >= T::zero()) {
                    return Err(Error::NegativeRegulator {
                        theta: 0.0,
                        value: c.as_f64(),
                    });
                }
            }
            Self::Custom { .. } => {
                for x in quad.rule(self.breakpoints()).nodes {
                    let v = self.eval(x);
                    if !(v >= T::zero()) {
                        return Err(Error::NegativeRegulator {
                            theta: x.as_f64(),
                            value: v.as_f64(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: Real> fmt::Debug for RegulatorFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegulatorFunction({})", self.description())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_fourier_is_analytic() {
        let g = RegulatorFunction::constant(2.5f64);
        let q = QuadratureSpec::default();
        assert_eq!(g.fourier(0, &q), Complex::new(2.5, 0.0));
        assert_eq!(g.fourier(3, &q), Complex::new(0.0, 0.0));
    }

    #[test]
    fn custom_fourier_by_quadrature() {
        let g = RegulatorFunction::custom("1+cos", |t: f64| 1.0 + t.cos());
        let q = QuadratureSpec::default();
        assert!((g.fourier(0, &q).re - 1.0).abs() < 1e-13);
        assert!((g.fourier(1, &q).re - 0.5).abs() < 1e-13);
        assert!(g.fourier(2, &q).norm() < 1e-13);
    }

    #[test]
    fn negative_values_are_rejected() {
        let q = QuadratureSpec::gauss_legendre(64);
        assert!(RegulatorFunction::constant(-1.0f64).validate(&q).is_err());
        assert!(RegulatorFunction::custom("sin", |t: f64| t.sin())
            .validate(&q)
            .is_err());
        assert!(RegulatorFunction::custom("abs", |t: f64| t.abs())
            .with_breakpoints(vec![0.0])
            .validate(&q)
            .is_ok());
    }
}
