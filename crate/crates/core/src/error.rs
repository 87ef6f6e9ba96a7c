use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants fall into three families: input errors (shape, parse, validation),
/// mathematical verification failures (the input is not what it claims to be),
/// and incompleteness (rational arithmetic cannot certify the answer).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("characteristic polynomial does not split over the rationals: {0}")]
    SplittingFailure(String),

    #[error("refined generalized eigenspaces do not form a direct sum: {0}")]
    NotADecomposition(String),

    #[error("Leibniz identity violated: {0}")]
    IdentityViolation(String),

    #[error("action is not well defined on the quotient: {0}")]
    WellDefinednessFailure(String),

    #[error("subspace is not closed under the bracket")]
    NotClosed,

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("algebra is not right nilpotent")]
    NotRightNilpotent,

    #[error("result contradicts a structural theorem (input is likely invalid): {0}")]
    TheoremViolation(String),

    #[error("undecidable with the available certificate: {0}")]
    Undecidable(String),

    #[error("subalgebra is not a Cartan subalgebra: {0}")]
    NotCartan(String),

    #[error("zero weight space differs from the Cartan subalgebra")]
    ZeroWeightMismatch,

    #[error("no Cartan subalgebra found in {attempts} attempts; smallest subalgebra candidate: {best}")]
    NotFound { attempts: usize, best: String },

    #[error("Lie factor is not semisimple")]
    SemisimplicityNotEstablished,

    #[error("structure check failed in clause {clause}: {detail}")]
    ClauseFailure { clause: String, detail: String },

    #[error("not an sl2 Lie algebra: {0}")]
    NotSl2(String),

    #[error("n must be even, got {0}")]
    BadParity(i64),

    #[error("parameter out of range: {0}")]
    BadRange(String),

    #[error("internal mismatch (this is a bug): {0}")]
    InternalMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
