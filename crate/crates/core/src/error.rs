use thiserror::Error;

/// Errors produced by the fermicomp library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("orbital count must be at least 1")]
    EmptySize,

    #[error("orbital count {n} exceeds the supported limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("index {index} out of range for size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("indices must be distinct, got {0:?}")]
    RepeatedIndex(Vec<usize>),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("operation requires an odd index, got {0}")]
    EvenIndex(usize),

    #[error("dense realization of {n} qubits exceeds the cap of {cap}")]
    DenseCap { n: usize, cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("integral table is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("term {0} has a complex coefficient and cannot be exponentiated as a rotation")]
    ComplexCoefficient(String),

    #[error("unsupported Suzuki-Trotter order {0} (expected 1..=4)")]
    UnsupportedOrder(usize),

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("interleaved ordering needs exactly two commuting parts, found {0}")]
    InterleavedParts(usize),

    #[error("interleaved ordering is only defined for first-order schedules, got order {0}")]
    InterleavedOrder(usize),

    #[error("phase wrapping: |E t| = {0} is not below pi")]
    PhaseWrap(f64),

    #[error("overlap magnitude {0:e} is too small to extract a phase")]
    VanishingOverlap(f64),

    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
