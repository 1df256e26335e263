use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// The quaternion algebra (a,b) is split over the rationals, so there is no
    /// pointless conic to work with.
    #[error("the algebra ({a}, {b}) is split: {detail}")]
    SplitAlgebra { a: String, b: String, detail: String },

    /// Polynomial degree exceeds the factorization bound.
    #[error("polynomial degree {degree} exceeds the factorization bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    /// A decision or construction was requested over a field we do not decide.
    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    /// Evaluation of a function with a pole at the requested point.
    #[error("pole at point: valuation {valuation} < 0")]
    PoleAtPoint { valuation: i64 },

    /// A representative violating the preconditions of a local functional.
    #[error("bad representative: {0}")]
    BadRepresentative(String),

    /// A degenerate bilinear or hermitian form where a nondegenerate one is required.
    #[error("degenerate form")]
    DegenerateForm,

    /// Division by zero in an exact field.
    #[error("division by zero")]
    DivisionByZero,

    /// Malformed textual input (scalars, elements, config files).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
