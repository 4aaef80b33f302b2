use thiserror::Error;

/// Errors raised by the arithmetic and synthesis layers.
///
/// Variants fall into two groups: caller mistakes (bad parameters, malformed
/// input, unsupported `n`) and integrity failures that can only be reached
/// through an arithmetic bug or an input that violates a documented premise.
/// [`Error::is_integrity_failure`] separates the two.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gate-set parameter n must be a positive even integer, got {0}")]
    InvalidN(i64),

    #[error("operands belong to different rings (n = {left} and n = {right})")]
    ContextMismatch { left: u32, right: u32 },

    #[error("exponent {t} is not coprime to 2n = {order}")]
    NotCoprime { t: i64, order: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("valuations at the prime above 2 are only implemented for n in {{2, 4, 6, 8, 12}}, got n = {0}")]
    UnsupportedValuation(u32),

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("descent stalled at step {step}: {reason}")]
    NotReducible { step: usize, reason: String },

    #[error("residual scalar is not a power of the primitive 2n-th root of unity")]
    PhaseNotInRing,

    #[error("no k in [1, 2n] reduces the complexity measure (mu = {mu})")]
    NoReducingK { mu: i64 },

    #[error("determinant ratio is not a power of the primitive 2n-th root of unity")]
    NoPhaseMatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integrity failure: {0}")]
    Integrity(String),
}

impl Error {
    /// True for failures that signal a bug or a broken premise rather than
    /// bad user input.
    pub fn is_integrity_failure(&self) -> bool {
        matches!(
            self,
            Error::NoReducingK { .. } | Error::Integrity(_) | Error::NoPhaseMatch
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
