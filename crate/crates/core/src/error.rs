use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("the zero class has no slope")]
    ZeroClass,

    #[error("class {0} violates positivity")]
    NotPositive(String),

    #[error("slope vectors of different length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("cannot compare slopes from different families: {0} vs {1}")]
    CrossFamily(String, String),

    #[error("unsupported by this family: {0}")]
    UnsupportedFamily(String),

    #[error("point `{0}` is not in the configured point order")]
    UnknownPoint(String),

    #[error("invalid shuffle: {0}")]
    InvalidShuffle(String),

    #[error("blocks are not a consecutive partition: {0}")]
    NonConsecutiveBlocks(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("cut describes an unbounded t-structure")]
    Unbounded,

    #[error("bad catalog parameters: {0}")]
    BadParams(String),

    #[error("torsion pair is not describable by a standard cut: {0}")]
    NotSlopeDescribable(String),

    #[error("Hom(A1, A0) is nonzero: {0}")]
    HomViolation(String),

    #[error("q = {0} is outside [0,1) and not infinity")]
    QOutOfRange(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("torsion length must be at least 1 (at position {pos})")]
    InvalidLength { pos: usize },

    #[error("rank and degree are not coprime in S({r},{d},..) (at position {pos})")]
    NonCoprime { r: i64, d: i64, pos: usize },

    #[error("invalid stable class: {0}")]
    InvalidClass(String),

    #[error("expression mixes projective-line and elliptic atoms")]
    MixedCategories,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
