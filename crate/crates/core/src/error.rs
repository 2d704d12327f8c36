use thiserror::Error;

use crate::exactlin::Int;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants map onto CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeModulus(Int),
    #[error("invalid modulus {0}: moduli must be at least 2")]
    InvalidModulus(Int),
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(Int, Int),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("value at {0:?} is zero")]
    ZeroValue(Vec<usize>),
    #[error("inconsistent specialization: {0}")]
    InconsistentSpecialization(String),
    #[error("internal postcondition failure: {0}")]
    InternalPostconditionFailure(String),
    #[error("valuation relation for prime {prime} is not transitive on ({i}, {j}, {l})")]
    NonTransitiveRelation {
        prime: Int,
        i: usize,
        j: usize,
        l: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no volume-one representation exists: {0}")]
    ConditionsNotSatisfied(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("vertex subset of size {size} is smaller than k = {k}")]
    SubsetTooSmall { size: usize, k: usize },
    #[error("labels must be positive, got {0}")]
    NonPositive(Int),
    #[error("window of columns starting at {0} is rank deficient")]
    RankDeficientWindow(usize),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown root system {0:?}")]
    UnknownSystem(String),
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code for the command-line front end: 3 for resource limits,
    /// 2 for everything else (input or format errors).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            _ => 2,
        }
    }
}
