use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid composition or partition: {0}")]
    InvalidShape(String),
    #[error("invalid set family: {0}")]
    InvalidFamily(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element {element} is outside 1..={max}")]
    OutOfRange { element: usize, max: usize },
    #[error("{what} with n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("quasisymmetric function is not symmetric")]
    NotSymmetric,
    #[error("family profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("budget of {budget} exceeded ({needed} required)")]
    BudgetExceeded { budget: u64, needed: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
