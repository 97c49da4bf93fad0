use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("coweight is not in the coweight lattice Y")]
    NotInLattice,
    #[error("coweight is not dominant")]
    NotDominant,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("element is not straight")]
    NotStraight,
    #[error("not a short datum: {0}")]
    NotShort(String),
    #[error("admissible set too large: length {length} exceeds cap {cap}")]
    TooLarge { length: i64, cap: i64 },
    #[error("pair is not HN-irreducible")]
    NotIrreducible,
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("search bound exceeded")]
    SearchBound,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
