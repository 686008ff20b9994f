//! Closed-form symmetric-ordering arrival-time operator.

use num_complex::Complex;

use crate::basis::{BasisTruncation, PhysicalParams};
use crate::error::Result;
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::operators::regulator::RegulatorFunction;
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;

/// Fills the symmetric-ordering operator entry by entry. `quad` is used only
/// for the Fourier coefficients of a non-constant regulator.
///
/// With I = m r²:
/// - j, k != 0, j != k: I/(2iħ) (j+k)/(jk(j-k))
/// - k != 0 diagonal: I π/(ħ|k|)
/// - (k, 0): I [1/(2iħk²) + ĝ(k)/2], and (0, k) its conjugate
/// - (0, 0): I ĝ(0)
///
/// where ĝ(l) = (1/2π) ∫ g e^{-ilθ} dθ.
pub fn build_symmetric_closed_form<T: Real>(
    g: &RegulatorFunction<T>,
    basis: BasisTruncation,
    p: &PhysicalParams<T>,
    quad: &QuadratureSpec,
) -> Result<HermitianOperator<T>> {
    p.validate()?;
    g.validate(quad)?;
    let inertia = p.inertia();
    let hbar = p.hbar;
    let half = T::lit(0.5);
    let dim = basis.dimension();
    let n = basis.n_max() as i64;
    let g_hat: Vec<Complex<T>> = (-n..=n).map(|l| g.fourier(l, quad)).collect();
    let g_at = |l: i64| g_hat[(l + n) as usize];

    let m = ComplexMatrix::from_fn(dim, |r, c| {
        let j = basis.momentum(r);
        let k = basis.momentum(c);
        let (jf, kf) = (T::from_index(j), T::from_index(k));
        let z = match (j, k) {
            (0, 0) => g_at(0),
            (_, 0) => {
                // 1/(2iħj²) = -i/(2ħj²)
                Complex::new(T::zero(), -half / (hbar * jf * jf)) + g_at(j) * half
            }
            (0, _) => Complex::new(T::zero(), half / (hbar * kf * kf)) + g_at(-k) * half,
            _ if j == k => Complex::new(T::PI() / (hbar * jf.abs()), T::zero()),
            _ => {
                let ratio = (jf + kf) / (jf * kf * (jf - kf));
                Complex::new(T::zero(), -half * ratio / hbar)
            }
        };
        z * inertia
    });
    HermitianOperator::new(basis, m)
}
