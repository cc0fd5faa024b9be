use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("floating-point convolution cannot be rounded safely (deviation {deviation:e})")]
    RoundingUnsafe { deviation: f64 },

    #[error("expected an ordinary polynomial, found lowest exponent {offset}")]
    NotAPolynomial { offset: i64 },

    #[error("sequence is zero")]
    ZeroSequence,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("demerit factor is zero, merit factor undefined")]
    ZeroDemeritFactor,

    #[error("bad seed: {0}")]
    BadSeed(String),

    #[error("requested depth {depth} exceeds the {signs} available signs")]
    DepthExceedsSigns { depth: usize, signs: usize },

    #[error("depth {depth} exceeds the maximum stem depth {max}")]
    DepthTooLarge { depth: usize, max: usize },

    #[error("seed is not a Littlewood polynomial")]
    NotLittlewood,

    #[error("bad hex seed {text:?} for length {len}: {reason}")]
    BadHex {
        text: String,
        len: usize,
        reason: String,
    },

    #[error("generator s acts only on pairs")]
    PairOnlyGenerator,

    #[error("unknown symmetry generator {0:?}; expected one of n, h, r, s")]
    BadWord(String),

    #[error("group relation {relation} fails at {witness}")]
    RelationViolation { relation: String, witness: String },

    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),

    #[error("checkpoint objective/length mismatch: expected {expected}, found {found}")]
    ObjectiveMismatch { expected: String, found: String },

    #[error("unsupported length {len}: {reason}")]
    UnsupportedLength { len: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
