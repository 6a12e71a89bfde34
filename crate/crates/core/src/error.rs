use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid elastic medium: {0}")]
    InvalidMedium(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{function} is undefined at x = {x}")]
    Domain { function: &'static str, x: f64 },

    #[error("kernel evaluated at coincident points")]
    SingularPoint,

    #[error("degenerate curve: |z'(t)| vanishes at t = {t}")]
    DegenerateCurve { t: f64 },

    #[error("non-positive radius {radius} at t = {t}")]
    NonPositiveRadius { t: f64, radius: f64 },

    #[error("misconfigured source point: {0}")]
    SourcePlacement(String),

    #[error("singular linear system ({context}) at pivot {pivot}")]
    SingularSystem { context: String, pivot: usize },

    #[error("conjugate gradients stalled after {iterations} iterations (relative residual {residual:e})")]
    CgNotConverged { iterations: usize, residual: f64 },

    #[error("radius collapsed in iteration {iteration} after {halvings} step halvings")]
    RadiusCollapse { iteration: usize, halvings: usize },

    #[error("grid mismatch: expected {expected} nodes, found {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("kernel `{label}` contradicts its declared singularity class: {reason}")]
    SingularityMismatch { label: String, reason: String },

    #[error("density representation mismatch: {0}")]
    Representation(&'static str),
}
