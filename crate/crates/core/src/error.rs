// SPDX-License-Identifier: MIT

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("padding undefined: λ = {lambda} needs n ≥ {needed}, got {n}")]
    PaddingUndefined { lambda: String, n: usize, needed: usize },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the harmonic method requires d = 1 (got d = {0})")]
    HarmonicNeedsD1(usize),

    #[error("non-integer multiplicity {value} for {lambda}")]
    NonIntegerMultiplicity { lambda: String, value: String },

    #[error("S_(n+1) action does not stabilize the subspace ({0})")]
    UnstableAction(String),

    #[error("unknown identifier: {0}")]
    UnknownId(String),

    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("computation exceeds the budget: {0}")]
    Budget(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
