use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("negative exponent on non-inverted generator `{0}`")]
    NegativeExponentOfNonInverted(String),
    #[error("generator `{0}` is already inverted")]
    AlreadyInverted(String),
    #[error("operation requires a single monomial quotient, not a product ring")]
    ProductRingUnsupported,
    #[error("expected a monomial, got `{0}`")]
    NonMonomial(String),
    #[error("parity homomorphism is trivial")]
    TrivialParity,
    #[error("generator `{0}` has odd parity; only even generators are supported")]
    OddGenerator(String),
    #[error("weight slices of this ring are infinite-dimensional: {0}")]
    UnboundedSlice(String),
    #[error("coefficient ring {0} is not supported here: {1}")]
    UnsupportedCoefficients(String, String),
    #[error("matrix entry ({row},{col}) is not homogeneous of the expected degree: {detail}")]
    NonHomogeneous { row: usize, col: usize, detail: String },
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring is not weight-graded local: {0}")]
    NotLocal(String),
    #[error("module is not locally free at prime {0}")]
    NotLocallyFreeAtP(String),
    #[error("ring is not connected")]
    NotConnected,
    #[error("module is not projective at prime {prime}: {reason}")]
    NotProjectiveSomewhere { prime: String, reason: String },
    #[error("length mismatch: permutation of degree {perm} against a word of length {word}")]
    LengthMismatch { perm: usize, word: usize },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("2 is not invertible in the coefficient ring")]
    TwoNotInvertible,
    #[error("malformed tensor word: {0}")]
    MalformedWord(String),
    #[error("d_{{n-1}} after d_n is nonzero for n = {0}")]
    DSquaredNonzero(i64),
    #[error("ill-formed algebra map: {0}")]
    IllFormedAlgebraMap(String),
    #[error("truncation W={w} is below the generator weight {needed}")]
    TruncationTooSmall { w: i64, needed: i64 },
    #[error("exactness audit failed in homological degree {degree}, weight {weight}")]
    ExactnessAuditFailed { degree: i64, weight: i64 },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("map is not an H-epimorphism: {0}")]
    NotAnEpi(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("no solution: {0}")]
    NoSolution(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
