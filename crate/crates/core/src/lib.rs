//! Time-of-arrival operator for a free particle on a circle and the
//! statistics of a waiting-screen detector.
//!
//! The crate builds the arrival-time operator in a truncated
//! angular-momentum basis, either by direct quantization of the classical
//! first-passage time or from its closed form in the symmetric ordering,
//! diagonalizes it, and simulates a screen that repeatedly tests whether the
//! particle sits on an arc of the circle.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, with `*32` variants for `f32`.

// `!(x > 0)` style checks deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod error;
pub mod io;
pub mod matrix;
pub mod operators;
pub mod quadrature;
pub mod scalar;
pub mod screen;
pub mod spectral;

pub use num_complex::Complex;

pub use basis::{BasisTruncation, PhysicalParams};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianOperator};
pub use operators::{
    build_operator_wwsc, build_symmetric_closed_form, classical_toa, classical_toa_with,
    free_hamiltonian, OrderingKernel, RegulatorFunction, ScreenConvention,
};
pub use quadrature::{QuadratureScheme, QuadratureSpec};
pub use scalar::Real;
pub use screen::{AbsorberMode, AbsorptionRecord, MeasureKind, ScreenConfig};
pub use spectral::{SpectralDecomposition, StateVector};

pub type Params = PhysicalParams<f64>;
pub type Matrix = ComplexMatrix<f64>;
pub type Operator = HermitianOperator<f64>;
pub type Spectrum = SpectralDecomposition<f64>;
pub type State = StateVector<f64>;
pub type Regulator = RegulatorFunction<f64>;
pub type Kernel = OrderingKernel<f64>;
pub type Screen = ScreenConfig<f64>;
pub type Record = AbsorptionRecord<f64>;

pub type Params32 = PhysicalParams<f32>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Operator32 = HermitianOperator<f32>;
pub type Spectrum32 = SpectralDecomposition<f32>;
pub type State32 = StateVector<f32>;
