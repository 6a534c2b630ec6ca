// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the builders, integrators and I/O helpers.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument is outside its documented range.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A time or canonical coordinate lies outside the domain of a warp.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integrand or callback produced a non-finite value.
    #[error("evaluation failed at x = {abscissa}: {message}")]
    Evaluation { abscissa: f64, message: String },

    /// Singular or ill-conditioned linear algebra, or a diverging state.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn numeric(msg: impl Into<String>) -> Error {
    Error::Numeric(msg.into())
}
