use thiserror::Error;

/// Errors raised by the engine.
///
/// Axiom violations of a partial action are not errors: they are returned as a
/// [`crate::paction::ValidationReport`]. `Error::ValidationFailed` only appears when an
/// operation needs a valid action and was handed an invalid one.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group of order {0} exceeds the capacity of 512 elements")]
    CapacityExceeded(usize),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not given as a product of cyclic groups")]
    NotCyclicProduct,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("partial action is invalid: {0}")]
    ValidationFailed(String),
    #[error("action is not global")]
    NotGlobal,
    #[error("actions are over different groups")]
    GroupMismatch,
    #[error("extensions are over different base rings")]
    RingMismatch,
    #[error("extension is not partial Galois")]
    NotGalois,
    #[error("the algebra has no idempotents (empty basis)")]
    EmptyAlgebra,
    #[error("invalid base ring: {0}")]
    InvalidRing(String),
    #[error("Galois transfer failed: {0}")]
    TransferFailed(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
