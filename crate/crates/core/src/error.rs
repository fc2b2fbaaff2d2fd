use thiserror::Error;

/// Errors raised by the algebra, combinatorics and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-distinct spectrum")]
    NonDistinctSpectrum,
    #[error("operator dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("matrix is singular over F_{0}")]
    SingularMatrix(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown definition tag {0:?}")]
    UnknownDefinition(String),
    #[error("not a virtual character combination: coefficient {coeff} at {partition}")]
    NotVirtualCharacter { partition: String, coeff: String },
    #[error("non-integer trace {0}")]
    NonIntegerTrace(String),
    #[error("expression not in orbit-sum span (stratum {0} is not constant)")]
    NotInOrbitSpan(usize),
    #[error("letters of U overlap the word: {0}")]
    Overlap(String),
    #[error("polynomial does not annihilate the operator: {0}")]
    NotAnnihilated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
