use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^H| = {defect:e}, allowed {allowed:e})")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("basis label {label} out of range 1..={dim} for party {party}")]
    IndexOutOfRange { party: usize, label: usize, dim: usize },

    #[error("parameter {name} = {value} out of range {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("partial transpose needs a nonempty party subset")]
    EmptySubset,

    #[error("invalid bipartition: {0}")]
    InvalidSplit(String),

    #[error("vector is not in explicit product form for this split: {0}")]
    NotProductForm(String),

    #[error("arity mismatch: expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("degenerate parameter {0}: the analysis needs a value strictly inside (0, 1)")]
    DegenerateParameter(f64),

    #[error("split mismatch: {0}")]
    SplitMismatch(String),

    #[error("vectors are not orthonormal (defect {0:e})")]
    NotOrthonormal(f64),

    #[error("malformed state document: {0}")]
    Malformed(String),

    #[error("quadratic form index {index} outside 1..={dim}")]
    FormIndexOutOfRange { index: i64, dim: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
