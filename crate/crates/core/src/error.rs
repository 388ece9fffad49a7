use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("elements preserve different Hermitian forms")]
    FormMismatch,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("matrix is not in the group: residual {residual:e} exceeds {tol:e}")]
    NotMember { residual: f64, tol: f64 },
    #[error("eigenvalue iteration did not converge after {iterations} steps")]
    NoConvergence { iterations: usize },
    #[error("ambiguous at the given tolerance: {0}")]
    Ambiguous(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("element does not fix the point at infinity")]
    NotFixingInfinity,
    #[error("element is not semisimple")]
    NotSemisimple,
    #[error("vector is space-like")]
    SpaceLike,
    #[error("singular matrix")]
    Singular,
    #[error("nullspace threshold gap too small: retained {retained:e}, discarded {discarded:e}")]
    IllConditioned { retained: f64, discarded: f64 },
}
