use thiserror::Error;

/// Errors surfaced by lattice, series, character and kernel operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("{0:?} is not a root of the datum")]
    NotARoot(Vec<i64>),

    #[error("weight is not dominant for the positive system")]
    NonDominant,

    #[error("reflection produced non-integral coordinates (internal consistency)")]
    NonIntegralImage,

    #[error("group order bound {0} exceeded during closure")]
    OrderBoundExceeded(usize),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("window cannot be certified: {0}")]
    Uncertifiable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("basis is rank-deficient on the working window; enlarge the window")]
    RankDeficient,

    #[error("representative violates the boundedness condition for root {0:?}")]
    RepresentativeOutOfBounds(Vec<i64>),

    #[error("mismatched parabolic data: {0}")]
    MismatchedParabolic(String),

    #[error("translation support violation: numerator term at {0:?} is outside the orbit set")]
    TranslationSupport(Vec<i64>),

    #[error("non-equisingular translation: source and target stabilizers differ")]
    NotEquisingular,

    #[error("relative denominator does not factor over the target datum")]
    NonFactorableDenominator,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
