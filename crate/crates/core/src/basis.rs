//! Angular-momentum basis and physical constants.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mass, radius and reduced Planck constant. All strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    pub mass: T,
    pub radius: T,
    pub hbar: T,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(mass: T, radius: T, hbar: T) -> Result<Self> {
        let p = Self { mass, radius, hbar };
        p.validate()?;
        Ok(p)
    }

    /// m = r = hbar = 1.
    pub fn natural() -> Self {
        Self {
            mass: T::one(),
            radius: T::one(),
            hbar: T::one(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mass", self.mass),
            ("radius", self.radius),
            ("hbar", self.hbar),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Moment of inertia m r².
    pub fn inertia(&self) -> T {
        self.mass * self.radius * self.radius
    }
}

impl<T: Real> Default for PhysicalParams<T> {
    fn default() -> Self {
        Self::natural()
    }
}

/// Truncated eigenbasis |k> of the angular momentum, k = -N..=N.
///
/// Row 0 holds k = -N, row 2N holds k = N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisTruncation {
    n_max: usize,
}

impl BasisTruncation {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::Domain("n_max must be a positive integer".into()));
        }
        Ok(Self { n_max })
    }

    /// Basis whose dimension is `dim`; `dim` must be odd and at least 3.
    pub fn from_dimension(dim: usize) -> Result<Self> {
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "dimension {dim} is not of the form 2N+1 with N >= 1"
            )));
        }
        Self::new(dim / 2)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dimension(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Row index of |k>, or `None` if |k| > N.
    pub fn row(&self, k: i64) -> Option<usize> {
        let n = self.n_max as i64;
        (-n..=n).contains(&k).then(|| (k + n) as usize)
    }

    /// Angular-momentum quantum number stored at `row`.
    pub fn momentum(&self, row: usize) -> i64 {
        debug_assert!(row < self.dimension());
        row as i64 - self.n_max as i64
    }

    pub fn momenta(&self) -> impl Iterator<Item = i64> {
        let n = self.n_max as i64;
        -n..=n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_is_a_bijection() {
        let b = BasisTruncation::new(4).unwrap();
        assert_eq!(b.dimension(), 9);
        let rows: Vec<usize> = b.momenta().map(|k| b.row(k).unwrap()).collect();
        assert_eq!(rows, (0..9).collect::<Vec<_>>());
        for r in 0..9 {
            assert_eq!(b.row(b.momentum(r)), Some(r));
        }
        assert_eq!(b.row(5), None);
        assert_eq!(b.row(-5), None);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BasisTruncation::new(0).is_err());
        assert!(BasisTruncation::from_dimension(4).is_err());
        assert_eq!(BasisTruncation::from_dimension(17).unwrap().n_max(), 8);
        assert!(PhysicalParams::new(1.0, 0.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, f64::NAN).is_err());
        assert!(PhysicalParams::new(2.0, 1.0, 1.0).is_ok());
    }
}
