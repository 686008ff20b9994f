//! Ordering kernels and matrix elements of the Stratonovich-Weyl quantizer.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::quadrature::{QuadratureSpec, Rule};
use crate::scalar::Real;

type KernelFn<T> = Arc<dyn Fn(T, i64) -> Complex<T> + Send + Sync>;

/// Kernel K(σ, l), σ ∈ (-π, π], l ∈ ℤ, selecting an operator ordering.
#[derive(Clone)]
pub enum OrderingKernel<T> {
    /// K ≡ 1.
    Weyl,
    /// K = cos(lσ/2).
    Symmetric,
    /// Arbitrary kernel; σ-integrals are done by quadrature.
    Custom { name: String, eval: KernelFn<T> },
}

impl<T: Real> OrderingKernel<T> {
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(T, i64) -> Complex<T> + Send + Sync + 'static,
    ) -> Self {
        Self::Custom {
            name: name.into(),
            eval: Arc::new(f),
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "weyl" => Some(Self::Weyl),
            "symmetric" => Some(Self::Symmetric),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Weyl => "weyl",
            Self::Symmetric => "symmetric",
            Self::Custom { name, .. } => name,
        }
    }

    pub fn eval(&self, sigma: T, l: i64) -> Complex<T> {
        match self {
            Self::Weyl => Complex::new(T::one(), T::zero()),
            Self::Symmetric => {
                Complex::new((T::from_index(l) * sigma * T::lit(0.5)).cos(), T::zero())
            }
            Self::Custom { eval, .. } => eval(sigma, l),
        }
    }

    /// (1/2π) ∫ K(σ, j-k) e^{iσ((j+k)/2 - n)} dσ.
    ///
    /// Only `j - k` and `j + k - 2n` enter. For the symmetric kernel this is
    /// ½(δ_{jn} + δ_{kn}); for the Weyl kernel it is sinc(π ν) with
    /// ν = (j+k)/2 - n, which vanishes for nonzero integer ν but not for
    /// half-integer ν.
    pub fn sigma_integral(&self, n: i64, j: i64, k: i64, quad: &QuadratureSpec) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        match self {
            Self::Symmetric => {
                let hits = (j == n) as u8 + (k == n) as u8;
                Complex::new(T::from_index(hits as i64) * T::lit(0.5), T::zero())
            }
            Self::Weyl => {
                let twice_nu = j + k - 2 * n;
                if twice_nu == 0 {
                    Complex::new(T::one(), T::zero())
                } else if twice_nu % 2 == 0 {
                    zero
                } else {
                    let x = T::PI() * T::from_index(twice_nu) * T::lit(0.5);
                    Complex::new(x.sin() / x, T::zero())
                }
            }
            Self::Custom { .. } => self.sigma_integral_by_quadrature(n, j, k, quad),
        }
    }

    /// σ-integral evaluated numerically for any kernel.
    pub fn sigma_integral_by_quadrature(
        &self,
        n: i64,
        j: i64,
        k: i64,
        quad: &QuadratureSpec,
    ) -> Complex<T> {
        self.sigma_integral_on(&quad.rule(&[]), n, j, k)
    }

    /// σ-integral on a prebuilt rule.
    pub fn sigma_integral_on(&self, rule: &Rule<T>, n: i64, j: i64, k: i64) -> Complex<T> {
        let l = j - k;
        let freq = T::from_index(j + k - 2 * n) * T::lit(0.5);
        let total =
            rule.integrate_complex(|s| self.eval(s, l) * Complex::from_polar(T::one(), freq * s));
        total / (T::PI() + T::PI())
    }
}

impl<T: Real> fmt::Debug for OrderingKernel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderingKernel({})", self.name())
    }
}

/// <j| Ω_K(θ, n) |k> = e^{-i(j-k)θ} (1/2π) ∫ K(σ, j-k) e^{iσ((j+k)/2 - n)} dσ.
pub fn quantizer_element<T: Real>(
    kernel: &OrderingKernel<T>,
    theta: T,
    n: i64,
    j: i64,
    k: i64,
    quad: &QuadratureSpec,
) -> Complex<T> {
    let phase = Complex::from_polar(T::one(), -T::from_index(j - k) * theta);
    phase * kernel.sigma_integral(n, j, k, quad)
}
