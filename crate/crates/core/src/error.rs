use thiserror::Error;

/// Errors produced by the geometry, feasibility and certification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points must have dimension at least 2, found {0}")]
    DimensionTooSmall(usize),

    #[error("operation requires planar input, found dimension {0}")]
    NotPlanar(usize),

    #[error("unsupported dimension {0} for this operation")]
    UnsupportedDimension(usize),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("coordinate {coord} of point {index} is not finite")]
    NonFinite { index: usize, coord: usize },

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("direction has norm {0}, expected a unit vector")]
    NotUnit(f64),

    #[error("base point is not a member of the point set")]
    NotAMember,

    #[error("active-set solver did not converge within {iterations} iterations")]
    SolverNonConvergence { iterations: usize },

    #[error("linear program failed: {0}")]
    LinearProgram(String),

    #[error("point set is a singleton; every direction is vacuously admissible")]
    DegenerateSingleton,

    #[error("region is empty")]
    EmptyRegion,

    #[error("region has empty interior")]
    DegenerateRegion,

    #[error("certificate bundle is empty")]
    EmptyBundle,

    #[error("certificate at point {index} has kind {found}, expected {expected}")]
    WrongCertificateKind {
        index: usize,
        expected: &'static str,
        found: &'static str,
    },

    #[error("no closed ball of radius {radius} contains the point set")]
    NoEnclosingBall { radius: f64 },

    #[error("precondition `{property}` fails at point {index}")]
    PreconditionFailed { property: String, index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
