//! Phase-space quantization of the classical arrival time by quadrature.
//!
//! ⟨j|T_K|k⟩ = Σ_n c_n(j-k) S_K(n, j, k), where
//! c_n(l) = (1/2π) ∫ T(θ, nħ) e^{-ilθ} dθ and S_K is the σ-integral of the
//! kernel. The n-sum runs over |n| <= N.

use std::collections::HashMap;

use num_complex::Complex;

use crate::basis::{BasisTruncation, PhysicalParams};
use crate::error::Result;
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::operators::classical::classical_toa;
use crate::operators::kernel::OrderingKernel;
use crate::operators::regulator::RegulatorFunction;
use crate::quadrature::{QuadratureSpec, Rule};
use crate::scalar::Real;

/// Fourier coefficients c_n(l) of the classical arrival time for a fixed
/// angular-momentum fiber, tabulated for |l| <= 2N.
struct FiberCoefficients<T> {
    n_max: i64,
    by_fiber: HashMap<i64, Vec<Complex<T>>>,
}

impl<T: Real> FiberCoefficients<T> {
    fn new(
        fibers: impl Iterator<Item = i64>,
        n_max: i64,
        g: &RegulatorFunction<T>,
        p: &PhysicalParams<T>,
        quad: &QuadratureSpec,
    ) -> Result<Self> {
        let mut breaks = vec![T::zero()];
        breaks.extend_from_slice(g.breakpoints());
        let rule: Rule<T> = quad.rule(&breaks);
        let two_pi = T::PI() + T::PI();
        // e^{-ilθ_i} for l = -2N..=2N, weighted by w_i / 2π.
        let phases: Vec<Vec<Complex<T>>> = (-2 * n_max..=2 * n_max)
            .map(|l| {
                let lf = T::from_index(l);
                rule.nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&x, &w)| Complex::from_polar(w / two_pi, -lf * x))
                    .collect()
            })
            .collect();

        let mut by_fiber = HashMap::new();
        for n in fibers {
            let momentum = T::from_index(n) * p.hbar;
            let samples = rule
                .nodes
                .iter()
                .map(|&x| classical_toa(x, momentum, g, p))
                .collect::<Result<Vec<T>>>()?;
            let coeffs = phases
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&samples)
                        .fold(Complex::new(T::zero(), T::zero()), |s, (&e, &f)| s + e * f)
                })
                .collect();
            by_fiber.insert(n, coeffs);
        }
        Ok(Self { n_max, by_fiber })
    }

    fn get(&self, n: i64, l: i64) -> Complex<T> {
        self.by_fiber[&n][(l + 2 * self.n_max) as usize]
    }
}

fn sigma_table<'a, T: Real>(
    kernel: &'a OrderingKernel<T>,
    quad: &'a QuadratureSpec,
) -> impl FnMut(i64, i64, i64) -> Complex<T> + 'a {
    let rule: Option<Rule<T>> =
        matches!(kernel, OrderingKernel::Custom { .. }).then(|| quad.rule(&[]));
    let mut cache: HashMap<(i64, i64), Complex<T>> = HashMap::new();
    move |n, j, k| match &rule {
        None => kernel.sigma_integral(n, j, k, quad),
        Some(rule) => *cache
            .entry((j - k, j + k - 2 * n))
            .or_insert_with(|| kernel.sigma_integral_on(rule, n, j, k)),
    }
}

fn accumulate<T: Real>(
    kernel: &OrderingKernel<T>,
    basis: BasisTruncation,
    coeffs: &FiberCoefficients<T>,
    fibers: &[i64],
    quad: &QuadratureSpec,
) -> ComplexMatrix<T> {
    let mut sigma = sigma_table(kernel, quad);
    let dim = basis.dimension();
    let mut m = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        let j = basis.momentum(r);
        for c in 0..dim {
            let k = basis.momentum(c);
            let mut acc = Complex::new(T::zero(), T::zero());
            for &n in fibers {
                let s = sigma(n, j, k);
                if s.re != T::zero() || s.im != T::zero() {
                    acc += coeffs.get(n, j - k) * s;
                }
            }
            m[(r, c)] = acc;
        }
    }
    m
}

/// Matrix of the quantized arrival time for an arbitrary ordering kernel.
///
/// Fails if the quadrature violates `nodes >= 4 * dimension`, if `g` is
/// negative on the grid, or if the result is not Hermitian (possible only
/// for custom kernels).
pub fn build_operator_wwsc<T: Real>(
    kernel: &OrderingKernel<T>,
    g: &RegulatorFunction<T>,
    basis: BasisTruncation,
    p: &PhysicalParams<T>,
    quad: &QuadratureSpec,
) -> Result<HermitianOperator<T>> {
    p.validate()?;
    quad.check_anti_aliasing(basis.dimension())?;
    g.validate(quad)?;
    let n_max = basis.n_max() as i64;
    let fibers: Vec<i64> = (-n_max..=n_max).collect();
    let coeffs = FiberCoefficients::new(fibers.iter().copied(), n_max, g, p, quad)?;
    let m = accumulate(kernel, basis, &coeffs, &fibers, quad);
    HermitianOperator::new(basis, m)
}

/// Largest entry of the contribution from the first omitted fibers
/// n = ±(N+1): an estimate of the error from truncating the n-sum.
/// Exactly zero for the symmetric kernel.
pub fn wwsc_truncation_tail<T: Real>(
    kernel: &OrderingKernel<T>,
    g: &RegulatorFunction<T>,
    basis: BasisTruncation,
    p: &PhysicalParams<T>,
    quad: &QuadratureSpec,
) -> Result<T> {
    p.validate()?;
    let n_max = basis.n_max() as i64;
    let fibers = [-(n_max + 1), n_max + 1];
    let coeffs = FiberCoefficients::new(fibers.iter().copied(), n_max, g, p, quad)?;
    Ok(accumulate(kernel, basis, &coeffs, &fibers, quad).max_abs())
}
