use thiserror::Error;

/// Errors shared by all layers of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("root of unity of order {order} does not embed in Q(zeta_{conductor})")]
    ConductorMismatch { order: u64, conductor: u64 },

    #[error("values belong to different groups")]
    GroupMismatch,

    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("budget exceeded: computation needs {needed}, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("malformed Cartan matrix: {reason}")]
    MalformedCartan { reason: String },

    #[error("invalid datum at vertices ({i},{j}): {reason}")]
    InvalidDatum { i: usize, j: usize, reason: String },

    #[error("inconsistent component: vertices {i} and {j} have different diagonal orders")]
    InconsistentComponent { i: usize, j: usize },

    #[error("unsupported braiding: entry ({i},{j}) has even order")]
    UnsupportedBraiding { i: usize, j: usize },

    #[error("invalid linking at ({i},{j}): {reason}")]
    InvalidLinking { i: usize, j: usize, reason: String },

    #[error("element is not bihomogeneous")]
    NonBihomogeneous,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
