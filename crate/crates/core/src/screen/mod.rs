//! Waiting-screen detector: repeated projective (or absorbing) measurements
//! of whether the particle lies on an arc of the circle.

pub mod absorption;
pub mod config;
pub mod projector;
pub mod zeno;

pub use absorption::{
    absorption_chain, absorption_probabilities, average_arrival_time, pov_element, pov_elements,
    survival_map, survival_operator, total_probability_bound, AbsorptionRecord, MeasureKind,
};
pub use config::{AbsorberMode, ScreenConfig, POV_TOLERANCE};
pub use projector::{check_contraction, reflector, screen_projector};
pub use zeno::{doubling_ladder, zeno_limit_scan, zeno_time, ZenoRow, ZenoScan};
