use thiserror::Error;

/// Errors raised by the exact-arithmetic engine and the verification checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} has no exact rational square root")]
    NotPerfectSquare(String),
    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },

    #[error("polynomial dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },
    #[error("polynomial is not divisible by (x{i} - x{j})")]
    NotDivisible { i: usize, j: usize },
    #[error("power sum degree {0} rejected (k must be at least 2)")]
    InvalidDegree(u32),

    #[error("operand is not symmetric under coordinate permutations")]
    NonSymmetricInput,
    #[error("operand is not translation invariant")]
    NotTranslationInvariant,
    #[error("coordinates {i} and {j} coincide")]
    CoincidentCoordinates { i: usize, j: usize },
    #[error("invalid system parameters: {0}")]
    InvalidParams(String),

    #[error("image polynomial lies outside the target invariant basis")]
    NotInSpan,
    #[error("post-hoc verification failed: {0}")]
    VerificationFailed(String),

    #[error("tower base exponent {beta} is neither 0 nor 2*weight+1 for weight {weight}")]
    InvalidTower { weight: String, beta: String },
    #[error("resolvent pole at exponent {exponent}")]
    ResolventPole { exponent: String },
    #[error("no Casimir root makes the canonical commutator vanish")]
    NoConsistentRoot,
    #[error("both Casimir roots make the canonical commutator vanish")]
    AmbiguousRoot,
    #[error("Casimir root not selected")]
    RootNotSelected,
    #[error("no dressing sign annihilates the vacuum with L-")]
    NoAnnihilatedVacuum,
    #[error("truncation order {0} too small (need at least 2)")]
    TruncationTooSmall(usize),
    #[error("omega must be a positive rational, got {0}")]
    NonPositiveOmega(String),

    #[error("configuration error in `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
