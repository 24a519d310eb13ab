// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric parameter lies outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Shapes, dimensions or entries of an input are unusable.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A matrix that must be a density matrix is not one.
    #[error("not a state: {0}")]
    NotAState(String),

    /// A random instance hit a degenerate configuration and cannot be checked.
    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn invalid_input(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
