use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("angle {0} lies outside (-pi, pi]")]
    AngleOutOfDomain(f64),

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error(
        "quadrature with {nodes} nodes violates the anti-aliasing bound (need at least {required})"
    )]
    InvalidQuadrature { nodes: usize, required: usize },

    #[error("regulator takes the negative value {value} at theta = {theta}")]
    NegativeRegulator { theta: f64, value: f64 },

    #[error("operator is not Hermitian: residual {residual:e} exceeds tolerance {tolerance:e}")]
    NonHermitian { residual: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("eigensolver failed to converge after {0} iterations")]
    NoConvergence(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("negative eigenvalue {0} rejected by the spectral transform")]
    NegativeEigenvalue(f64),

    #[error("no grid point falls inside the detection arc ({0}, {1})")]
    EmptyArc(f64, f64),

    #[error("invalid screen configuration: {0}")]
    InvalidScreen(String),

    #[error("reflector is not a contraction: it amplifies norms by a factor {0}")]
    ContractionViolation(f64),

    #[error("measurement step eta = {eta} does not exceed the Zeno time {tau_z}")]
    ZenoGate { eta: f64, tau_z: f64 },

    #[error("average arrival time is undefined: total absorption probability is zero")]
    UndefinedAverage,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
