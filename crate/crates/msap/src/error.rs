use thiserror::Error;

/// Errors shared by all modules of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation would exceed the configured resource budget.
    /// Nothing partial is returned; raise the budget and retry.
    #[error("budget exceeded: {what} requires {needed}, budget allows {allowed}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        allowed: u64,
    },

    /// Arguments outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A contact pattern whose length does not match the cling type.
    #[error("contact pattern length mismatch: expected {expected}, got {got}")]
    PatternLengthMismatch { expected: usize, got: usize },

    /// Malformed grid text; positions are 1-indexed.
    #[error("parse error at row {row}, col {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
