use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two surds over different square-free radicands met in one operation.
    #[error("unsupported field composite: sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),

    #[error("malformed literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },

    #[error("alpha out of range: {0} is not in (0,1/2)")]
    AlphaOutOfRange(String),

    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),

    #[error(
        "degenerate breakpoints: the points beta_k and beta_k+alpha are not pairwise distinct"
    )]
    DegenerateBreakpoints,

    #[error("complement of an empty interval is the full circle, which is not an interval value")]
    ComplementOfEmpty,

    #[error("same-length intersection does not apply: {0}")]
    IntersectPrecondition(String),

    #[error("formula not applicable to key {0}")]
    FormulaNotApplicable(String),

    #[error("index {index} out of range (m = {m})")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("{0} is not a circular arc of the index cycle")]
    NotAnArc(String),

    #[error("inconsistent Sturmian columns at index {index}: {column} is not an arc")]
    InconsistentColumns { index: usize, column: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("factor length {max_n} exceeds word length {len}")]
    WordTooShort { max_n: usize, len: usize },

    #[error("resampling exhausted after {0} attempts; loosen the denominator bound")]
    ResamplingExhausted(usize),
}

impl Error {
    pub(crate) fn parse(literal: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}
