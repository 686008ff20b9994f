//! Classical arrival time, ordering kernels and the quantized operators.

pub mod classical;
pub mod closed_form;
pub mod hamiltonian;
pub mod kernel;
pub mod regulator;
pub mod wwsc;

pub use classical::{classical_toa, classical_toa_with, ScreenConvention};
pub use closed_form::build_symmetric_closed_form;
pub use hamiltonian::free_hamiltonian;
pub use kernel::{quantizer_element, OrderingKernel};
pub use regulator::RegulatorFunction;
pub use wwsc::{build_operator_wwsc, wwsc_truncation_tail};
