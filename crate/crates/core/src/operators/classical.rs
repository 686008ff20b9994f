//! Classical first-passage time of a free particle on the circle.

use crate::basis::PhysicalParams;
use crate::error::{Error, Result};
use crate::operators::regulator::RegulatorFunction;
use crate::scalar::Real;

/// Value assigned at the screen itself (θ = 0) when L != 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScreenConvention {
    /// Particle already at the screen: T = 0.
    #[default]
    AtScreen,
    /// Count the next full revolution: T = m r² 2π/|L|.
    FullRevolution,
}

/// First-passage time to θ = 0 for initial angle `theta` in (-π, π] and
/// angular momentum `l`, using `ScreenConvention::AtScreen` at θ = 0.
pub fn classical_toa<T: Real>(
    theta: T,
    l: T,
    g: &RegulatorFunction<T>,
    p: &PhysicalParams<T>,
) -> Result<T> {
    classical_toa_with(theta, l, g, p, ScreenConvention::AtScreen)
}

pub fn classical_toa_with<T: Real>(
    theta: T,
    l: T,
    g: &RegulatorFunction<T>,
    p: &PhysicalParams<T>,
    convention: ScreenConvention,
) -> Result<T> {
    let pi = T::PI();
    if !(theta > -pi && theta <= pi) {
        return Err(Error::AngleOutOfDomain(theta.as_f64()));
    }
    let zero = T::zero();
    let two_pi = pi + pi;
    let reduced = if l == zero {
        g.eval(theta)
    } else if theta == zero {
        match convention {
            ScreenConvention::AtScreen => zero,
            ScreenConvention::FullRevolution => two_pi / l.abs(),
        }
    } else if theta < zero && l < zero {
        -(two_pi + theta) / l
    } else if theta > zero && l > zero {
        (two_pi - theta) / l
    } else {
        -theta / l
    };
    Ok(p.inertia() * reduced)
}
