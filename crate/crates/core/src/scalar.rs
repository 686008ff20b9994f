//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar the operators, solvers and simulations are
/// generic over. Implemented for `f32` and `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    fn from_index(i: i64) -> Self {
        Self::from_i64(i).expect("index is representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite conversion to f64")
    }

    /// A tolerance that is `strict` for `f64` and widened to a few hundred
    /// ulps for lower-precision types.
    fn tol(strict: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(256.0);
        Self::lit(strict).max(floor)
    }
}

impl Real for f32 {}
impl Real for f64 {}
