use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NonInvertible { value: u64, modulus: u64 },
    #[error("euclidean trace of (0, 0) is undefined")]
    BothZero,
    #[error("matrix [{a}, {b}; {c}, {d}] has determinant {det} != 1 mod {modulus}")]
    NotSymplectic { a: u64, b: u64, c: u64, d: u64, det: u64, modulus: u64 },
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("modulus {modulus} exceeds the enumeration bound {bound}")]
    BoundExceeded { modulus: u64, bound: u64 },
    #[error("no word of at most {0} factors reaches the target")]
    DepthExceeded(usize),
    #[error("parity error: {0}")]
    ParityError(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("state is not normalized: |norm^2 - 1| = {0:e}")]
    NotNormalized(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
