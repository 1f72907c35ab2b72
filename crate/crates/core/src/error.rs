use thiserror::Error;

/// Errors raised by lattice construction, function evaluation and the
/// reduction's back-mapping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid lattice: n = {n}, k = {k} (both must be at least 1 and n^k must fit in usize)")]
    InvalidSpec { n: u32, k: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {dim} has value {value}, outside [1, {n}]")]
    CoordinateOutOfRange { dim: usize, value: u32, n: u32 },

    #[error("dimension index {index} outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("point {point} is not in slice {slice}")]
    NotInSlice { point: String, slice: String },

    #[error("table has {got} entries, expected n^k = {expected}")]
    TableSize { expected: usize, got: usize },

    #[error("function returned {point}, which is not a point of the lattice")]
    BadOutput { point: String },

    #[error("lattice mismatch: {0}")]
    SpecMismatch(String),

    #[error("operation requires a table-backed function")]
    NotTable,

    #[error("unsupported lattice for this generator: {0}")]
    Unsupported(String),

    #[error("Kleene iteration did not converge within {budget} evaluations; the function is not monotone")]
    BudgetExceeded { budget: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
