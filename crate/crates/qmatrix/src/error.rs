//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. "A verification returned
//! false" is never an error — identities report their verdicts as booleans;
//! errors are reserved for violated preconditions, malformed input, and
//! resource bounds.

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An index lies outside the ambient interval [1, n].
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// An index set contains a repeated element.
    #[error("duplicate element {element} in index set")]
    DuplicateElement { element: usize },

    /// Two index sets that must have equal cardinality do not.
    #[error("cardinality mismatch: {left} vs {right}")]
    CardinalityMismatch { left: usize, right: usize },

    /// Two values built over different ambient sizes were combined.
    #[error("ambient size mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    /// An operation that requires a nonempty index set received an empty one.
    #[error("index set must be nonempty")]
    EmptyIndexSet,

    /// ξ_q(I; J) is only defined when J ≤ I in the elementwise order.
    #[error("xi_q undefined: {j} is not elementwise <= {i}")]
    XiUndefined { i: String, j: String },

    /// (−q)-integers are defined for d ≥ 1 only.
    #[error("(-q)-integer undefined for d = {d}; requires d >= 1")]
    NegQIntegerUndefined { d: i64 },

    /// Exact division by (q − 1) failed; the dividend is not a multiple.
    #[error("{dividend} is not divisible by q - 1")]
    NotDivisible { dividend: String },

    /// A ♮-complement or exponent was requested for a set outside its
    /// admissible family.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The bilinear-form oracle only accepts words of length ≥ 1 on both
    /// sides (plus the empty/empty pair).
    #[error("oracle contract: an empty word may only be paired with an empty word")]
    EmptyWordPairing,

    /// A sweep or expansion would exceed the configured term ceiling.
    #[error("term ceiling exceeded: predicted {predicted} terms > ceiling {ceiling}")]
    TermCeiling { predicted: u64, ceiling: u64 },

    /// Sweeps are restricted to desk scale.
    #[error("ambient size n = {n} exceeds the sweep bound n <= {bound}")]
    SweepBound { n: usize, bound: usize },

    /// Unknown relation kind / variant label.
    #[error("unknown kind: {0}")]
    UnknownKind(String),

    /// Text input failed to parse; `position` is a byte offset into the
    /// source.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
