use thiserror::Error;

/// Errors raised by the algebra, coding and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field size {0}; expected one of 2, 3, 5, 7")]
    UnsupportedField(u32),
    #[error("unsupported dimension n={n} for q={q}")]
    UnsupportedDimension { q: u8, n: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has rank {0}, expected rank one")]
    NotRankOne(usize),
    #[error("encoded value {value} does not fit in {q}^({n}^2)")]
    EncodingOverflow { value: u64, q: u8, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus polynomial is not irreducible")]
    NotIrreducible,
    #[error("space is not nonsingular")]
    NotNonsingular,
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
    #[error("slot {slot} out of range for a tensor of order {order}")]
    BadSlot { slot: usize, order: usize },
    #[error("isotopism component is not invertible")]
    NotInvertible,
    #[error("spread set is not contained in the span of the given matrices")]
    NotContained,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("search space too large: {0}")]
    TooLarge(&'static str),
    #[error("no table entry or feasible search for N_{q}({k},{d})")]
    Unknown { q: u8, k: usize, d: usize },
    #[error("tensor rank exceeds the cap {0}")]
    RankExceedsCap(usize),
    #[error("no [{length},{k},{d}] code nonexistence certificate; pruning unavailable")]
    PruningUnavailable { length: usize, k: usize, d: usize },
    #[error("unknown atlas entry {0:?}")]
    NotFound(alloc::string::String),
    #[error("operation unsupported for this input: {0}")]
    Unsupported(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
