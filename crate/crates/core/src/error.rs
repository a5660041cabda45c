use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient list is empty")]
    Empty,
    #[error("all coefficients are zero")]
    AllZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("form is not squarefree (zero discriminant)")]
    NotSquarefree,
    #[error("degree {got} is too small (need at least {min})")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("points are not four distinct points of the projective line")]
    Degenerate,
    #[error("form is reducible over the rationals")]
    Reducible,
    #[error("structure constant {0} is not integral")]
    ClosureViolation(String),
    #[error("orders are presented over different fields")]
    FieldMismatch,
    #[error("equivalence of {0} and {1} could not be decided")]
    UnknownPair(String, String),
    #[error("cache: {0}")]
    Cache(String),
}
