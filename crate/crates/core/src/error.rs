use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A polygon or family parameter constraint was violated.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A search exceeded its configured resource budget. A partial result
    /// would be meaningless, so the whole run is rejected.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// A feasibility constraint of a construction cannot be met.
    #[error("infeasible construction: {0}")]
    Infeasible(String),

    /// An internal geometric assertion failed. This indicates a bug, not
    /// bad input: the four polygon families are supposed to rule it out.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
