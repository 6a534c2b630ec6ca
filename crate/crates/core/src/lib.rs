// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Discrete-time structured state-space models built directly from a
//! time warp and an orthonormal basis.
//!
//! The transition of the memory recurrence `c' = A c + B u` is the inner
//! product of each basis function with its lagged copy,
//! `A[n][m] = <phi_n, phi_m o lag>`, where the lag operator maps the
//! canonical coordinate of one timestep onto the previous one. For the
//! exponential warp and the shifted Legendre basis this recovers the
//! HiPPO-LegS system exactly; the [`matrices`] module builds both sides so
//! the equivalence can be checked numerically.
//!
//! Module map:
//!
//! * [`basis`]: shifted, normalized Legendre functions on `(0, 1]`.
//! * [`warp`]: stationary time warps, their inverses, measures and the lag.
//! * [`quadrature`]: composite Gauss-Legendre integration.
//! * [`matrices`]: generators, exact discrete transitions, input vectors,
//!   the HiPPO-LegS reference, matrix exponential and bilinear transform.
//! * [`recurrence`]: the online memory update, reconstruction and the
//!   direct-projection oracle.
//! * [`signals`]: Lorenz63 and sine test signals, zero-order hold.
//! * [`experiment`]: the validation harness behind the `lagssm` binary.

pub mod basis;
pub mod error;
pub mod experiment;
pub mod matrices;
pub mod quadrature;
pub mod recurrence;
pub mod signals;
pub mod warp;

pub use basis::{BasisFamily, BasisSpec};
pub use error::{Error, Result};
pub use matrices::{DiscreteMatrices, GeneratorMatrices, HippoReference, InputModel, InputVector};
pub use quadrature::QuadratureConfig;
pub use recurrence::{MemoryState, SignalTrace};
pub use warp::{WarpFamily, WarpSpec};

pub use nalgebra::{DMatrix, DVector};
