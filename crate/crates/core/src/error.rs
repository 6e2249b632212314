//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects attached to different levels l were combined.
    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    /// Two objects of incompatible sizes were combined.
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    /// A symbolic-kappa object met a rational-kappa object (or two distinct
    /// rational kappas).
    #[error("kappa mode mismatch between parameters")]
    ModeMismatch,

    /// kappa = 0 is outside the supported parameter range.
    #[error("kappa must be nonzero")]
    KappaZero,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// The empty multipartition was passed where a removable box is needed.
    #[error("the empty multipartition has no removable box")]
    EmptyMultipartition,

    /// A configured resource cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// No multipartition has the supplied set of one-box removals.
    #[error("no multipartition has the given removal set")]
    NoPreimage,

    /// The removal set does not pin down a unique multipartition (one box,
    /// or the size-two row/column pair in a single component).
    #[error("removal set does not determine the multipartition: {0}")]
    Ambiguous(String),

    /// A mathematical hypothesis required by the requested operation fails.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("malformed input: {0}")]
    Parse(String),

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
