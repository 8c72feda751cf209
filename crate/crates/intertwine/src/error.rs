use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("matrix is not hermitian (residual {0:e})")]
    NotHermitian(f64),
    #[error("family is not a representation: {0}")]
    NotARepresentation(String),
    #[error("no square root in the exact field for {0}")]
    NoExactSqrt(String),
    #[error("no registered conjugate for object {0}")]
    NoConjugate(String),
    #[error("temperley-lieb variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("truncation bound {0} exceeded")]
    TruncationExceeded(usize),
    #[error("quantum integer [{0}] vanishes at this loop value")]
    SingularQuantumInteger(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("F is not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("action is not ergodic: fixed algebra has dimension {0}")]
    NotErgodic(usize),
    #[error("empty spectrum for {0}")]
    EmptySpectrum(String),
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("config error at {0}: {1}")]
    Config(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
