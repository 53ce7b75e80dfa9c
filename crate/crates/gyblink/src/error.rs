use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("dimension {dim} is not a power of {base}")]
    NotAPower { dim: usize, base: usize },

    #[error("duplicate eigenvalue in projector input: {0}")]
    DuplicateEigenvalue(String),

    #[error("spectrum mismatch: projector residual {residual:.3e} exceeds tolerance")]
    SpectrumMismatch { residual: f64 },

    #[error("matrix is singular (pivot below {0:.3e})")]
    Singular(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("braid letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("invalid N: {0} (must be an odd integer >= 3)")]
    InvalidN(i64),

    #[error("invalid label for N={n}: {label}")]
    InvalidLabel { n: i64, label: String },

    #[error("operator does not have the middle-index coupling structure (residual {0:.3e})")]
    NotStructured(f64),

    #[error("diagram has {got} crossings, exceeding the bound {bound}")]
    CrossingBound { got: usize, bound: usize },

    #[error("bad planar diagram data: {0}")]
    BadDiagram(String),

    #[error("unknown link name: {0}")]
    UnknownLink(String),

    #[error("unknown normalization scheme: {0}")]
    UnknownScheme(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
