//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. The variants separate the
//! ways an exact computation can refuse to answer: bad input data, a true
//! arithmetic obstruction (non-exact division, zero inverse), an unsolvable
//! Artin-Schreier equation, a field-tower bound, an exhausted step budget,
//! insufficient series precision, and a hypothesis of a normal-form
//! algorithm that the input fails to satisfy. Callers that certify facts
//! must treat every error as "not certified", never as "false".

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors produced by this crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Malformed input text. `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Structurally invalid data: ring mismatches, non-homogeneous input
    /// where homogeneous is required, points with all coordinates zero.
    #[error("invalid data: {0}")]
    Data(String),

    /// An exact operation that does not exist: division with remainder,
    /// inverse of zero, inverse of a non-unit series.
    #[error("arithmetic: {0}")]
    Arithmetic(String),

    /// `x^p - x = c` has no solution in the current field because the
    /// absolute trace of `c` is nonzero.
    #[error("trace obstruction: {0}")]
    TraceObstruction(String),

    /// A construction needed a field extension beyond the configured bound.
    #[error("field tower bound exceeded: {0}")]
    TowerBound(String),

    /// A step budget ran out before the computation finished.
    #[error("resource budget exhausted: {0}")]
    Resource(String),

    /// A truncated-series computation cannot decide at the available order.
    #[error("insufficient precision: {0}")]
    Precision(String),

    /// The input fails a hypothesis of the requested normal form, for
    /// example a non-reduced ramification divisor.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// Bad configuration: unknown ring descriptor, invalid prime list.
    #[error("configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn arithmetic(msg: impl Into<String>) -> Self {
        Error::Arithmetic(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }
}
