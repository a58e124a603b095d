//! Error types shared across the crate.

use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid nucleotide {0:?} (expected A, C, G or T)")]
    InvalidNucleotide(char),

    #[error("invalid degenerate code {0:?}")]
    InvalidCode(char),

    #[error("allowed set must contain between 1 and 4 nucleotides")]
    EmptyAllowedSet,

    #[error("a rule allowing all four nucleotides is not a restriction")]
    NotARestriction,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("rule index {index} out of range ({count} rules)")]
    RuleIndexOutOfRange { index: usize, count: usize },

    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: u64, reason: String },

    #[error("unsupported file version {found} (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "enumeration refused: estimated {estimated:.3e} tuple checks exceeds limit {limit:.3e}"
    )]
    EnumerationGuard { estimated: f64, limit: f64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}
