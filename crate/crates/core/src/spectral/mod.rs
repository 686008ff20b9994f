//! Eigendecomposition of Hermitian operators and the spectral diagnostics
//! run on the arrival-time operator.

pub mod decomposition;
pub mod dynamics;
pub mod eigen;
pub mod state;

pub use decomposition::{
    count_eigenvalues_above, eigendecompose_hermitian, hilbert_schmidt_norm, sign_census,
    spectral_sqrt, NegativePolicy, SignCensus, SpectralDecomposition,
};
pub use dynamics::{
    evolve, time_translation_report, Propagator, TimeTranslationReport, NON_INVARIANCE_DELTA,
};
pub use state::{angle_grid, position_density, StateVector};
