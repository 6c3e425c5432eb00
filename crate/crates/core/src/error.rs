//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when querying a finite truncation.
///
/// Operations refuse to answer questions the materialized data cannot
/// certify; they never silently assume the sequence is empty beyond its
/// bound.
#[derive(Debug, Error)]
pub enum Error {
    /// A query reaches past the materialized bound of a sequence or profile.
    #[error("query up to {needed} exceeds the materialized bound {bound}")]
    OutOfBound { needed: u64, bound: u64 },

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation requires a sequence of positive integers but 0 is a member.
    #[error("sequence contains 0; this operation requires positive integers")]
    Positivity,

    /// The sequence is not materialized far enough to certify the requested
    /// tolerance.
    #[error(
        "insufficient truncation: bound {have} cannot certify tolerance {tol} (need at least {need})"
    )]
    InsufficientTruncation { have: u64, need: u64, tol: f64 },

    /// A generator ran out of room below its cap.
    #[error("capacity {cap} reached after {got} of {want} requested terms")]
    Capacity { cap: u64, got: usize, want: usize },

    /// Input fails a structural requirement of a construction.
    #[error("construction error: {0}")]
    Construction(String),

    /// A sequence violates the strictly-increasing / within-bound invariants.
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    /// A sequence file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An experiment configuration names an unknown family or check.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
