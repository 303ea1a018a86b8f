use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank parameter n = {n} is not supported (need n >= 3)")]
    InvalidRank { n: usize },

    #[error("tolerances must be positive and finite (abs_tol = {abs_tol}, rank_tol = {rank_tol})")]
    InvalidTolerance { abs_tol: f64, rank_tol: f64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("eigenvalue iteration did not converge for a {dim}x{dim} matrix")]
    NoConvergence { dim: usize },

    #[error("eigenpair residual {residual:.3e} exceeds {bound:.3e} for a {dim}x{dim} matrix")]
    EigenResidual { dim: usize, residual: f64, bound: f64 },

    #[error("matrix unit index ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("e_({i},{i}) is not traceless and has no su(n) coordinates")]
    DiagonalMatrixUnit { i: usize },

    #[error("matrix is not traceless (trace = {trace:.3e})")]
    NotTraceless { trace: f64 },

    #[error("{what}: expansion residual {residual:.3e} exceeds tolerance")]
    ExpansionResidual { what: String, residual: f64 },

    #[error("orbit of {label} did not close within {limit} iterations")]
    OrbitNotClosed { label: String, limit: usize },

    #[error("submodule {label}: {detail}")]
    Submodule { label: String, detail: String },

    #[error("decomposition check failed: {0}")]
    Decomposition(String),

    #[error("unknown submodule label {0:?}")]
    UnknownLabel(String),

    #[error("spectral parameter {lambda} lies within {guard} of the pole at {pole}")]
    PoleProximity { lambda: String, pole: f64, guard: f64 },

    #[error("the two assemblies of {what} disagree by {residual:.3e}")]
    AssemblyMismatch { what: String, residual: f64 },

    #[error("linear system in {0} is singular at this sample; resample")]
    SingularSolve(String),

    #[error("dimension {required} exceeds the cap {cap}")]
    DimensionCap { required: usize, cap: usize },

    #[error("{0}")]
    Usage(String),

    #[error("JSON error: {0}")]
    Json(String),
}
