use thiserror::Error;

/// Largest supported qubit count. A statevector for n = 15 already holds
/// 32768 complex amplitudes; anything beyond that is outside this crate's
/// intended desk-scale use.
pub const MAX_QUBITS: usize = 15;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed state file: {0}")]
    MalformedState(String),

    #[error("amplitude count {0} is not 2^n for any n in 1..={MAX_QUBITS}")]
    BadAmplitudeCount(usize),

    #[error("non-finite amplitude at index {0}")]
    NonFiniteAmplitude(usize),

    #[error("cannot normalize a state with zero norm")]
    ZeroNorm,

    #[error("unknown standard state `{0}` (expected ghz, w, product-zero, or basis:i)")]
    UnknownStandardState(String),

    #[error("basis index {index} out of range for n={n}")]
    BasisIndexOutOfRange { index: usize, n: usize },

    #[error("qubit slot {slot} out of range 1..={n}")]
    SlotOutOfRange { slot: usize, n: usize },

    #[error("operator string length {len} does not match qubit count {n}")]
    OperatorLengthMismatch { len: usize, n: usize },

    #[error("transform has {len} matrices but the state has {n} qubits")]
    TransformLengthMismatch { len: usize, n: usize },

    #[error("invariants are defined for odd n >= 3, got n={0}")]
    UnsupportedQubitCount(usize),

    #[error("expected an n={expected} state, got n={got}")]
    WrongQubitCount { expected: usize, got: usize },

    #[error("permutation {0:?} is not a bijection on 1..=n")]
    NotAPermutation(Vec<usize>),

    #[error("invariant index {k} out of range 1..={n}")]
    InvariantIndexOutOfRange { k: usize, n: usize },

    #[error("no well-conditioned matrix found after {0} rejection-sampling attempts")]
    SamplingExhausted(usize),

    #[error("transform matrix {0} is singular")]
    SingularMatrix(usize),

    #[error("malformed transform file: {0}")]
    MalformedTransform(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
