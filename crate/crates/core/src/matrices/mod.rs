// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Every matrix of the lag-operator construction and its HiPPO-LegS
//! counterpart.
//!
//! Index convention: `a_delta[(n, m)] = <phi_n, phi_m o lag>`, so column `m`
//! holds the expansion of the lagged `phi_m` in the current basis. Under
//! this convention `a_gen` is upper triangular for the exponential warp and
//! equals the transpose of the HiPPO `A^0`. The coefficient update
//! `c_{t+d} = T c_t + B u` needs the transposed orientation of the
//! corrected transition; [`DiscreteMatrices::state_transition`] returns it.

mod expm;
pub mod io;
mod linalg;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::basis::{boundary_values, eval_phi_deriv_all, fill_phi, BasisSpec, MAX_BASIS};
use crate::error::{argument, numeric, Error, Result};
use crate::quadrature::{composite_nodes, QuadratureConfig};
use crate::warp::{lag, WarpSpec};

pub use expm::{matrix_exp, squaring_count, PADE_ORDER, SCALED_NORM_MAX};
pub use linalg::{bilinear_discretize, compose_block_diagonal, frobenius_rel_diff, invert_with_condition, norm1};

/// Default upper bound on the step accepted by [`build_a_delta`].
pub const DEFAULT_DELTA_CAP: f64 = 0.5;

/// Condition-number guard used by [`correct_a_delta`].
pub const DEFAULT_MAX_CONDITION: f64 = 1e12;

/// Continuous-time generators `c' = a_gen c + b_gen u`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrices {
    pub a_gen: DMatrix<f64>,
    pub b_gen: DVector<f64>,
    pub basis: BasisSpec,
    pub warp: WarpSpec,
}

impl GeneratorMatrices {
    pub fn build(basis: &BasisSpec, warp: &WarpSpec, quad: &QuadratureConfig) -> Result<Self> {
        Ok(Self {
            a_gen: build_a_gen(basis, warp, quad)?,
            b_gen: build_b_gen(basis, warp),
            basis: *basis,
            warp: *warp,
        })
    }
}

/// `A_gen[(n, m)] = int_0^1 phi_n(z) phi'_m(z) / g'(z) dz`.
pub fn build_a_gen(basis: &BasisSpec, warp: &WarpSpec, quad: &QuadratureConfig) -> Result<DMatrix<f64>> {
    let n = basis.n_basis();
    let (nodes, weights) = composite_nodes(0.0, 1.0, quad)?;
    let mut out = DMatrix::<f64>::zeros(n, n);
    let mut phi = vec![0.0; n];
    for (z, w) in nodes.iter().zip(&weights) {
        let gp = warp.g_prime(*z);
        if gp == 0.0 || !gp.is_finite() {
            return Err(Error::Evaluation {
                abscissa: *z,
                message: format!("g'(z) = {gp}"),
            });
        }
        fill_phi(*z, &mut phi);
        let dphi = eval_phi_deriv_all(basis, *z);
        let scale = w / gp;
        for row in 0..n {
            let left = scale * phi[row];
            for col in 0..n {
                out[(row, col)] += left * dphi[col];
            }
        }
    }
    Ok(out)
}

/// `B_gen[n] = phi_n(1) f'(0)`.
pub fn build_b_gen(basis: &BasisSpec, warp: &WarpSpec) -> DVector<f64> {
    let fp0 = warp.f_prime(0.0);
    DVector::from_iterator(basis.n_basis(), boundary_values(basis).into_iter().map(|b| b * fp0))
}

/// Closed-form HiPPO-LegS matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct HippoReference {
    pub a_hippo: DMatrix<f64>,
    pub b_hippo: DVector<f64>,
}

/// `A^0[(n, m)]`: `sqrt((2n+1)(2m+1))` below the diagonal, `n` on it.
pub fn legs_a0(n_basis: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n_basis, n_basis, |n, m| {
        if m < n {
            (((2 * n + 1) * (2 * m + 1)) as f64).sqrt()
        } else if m == n {
            n as f64
        } else {
            0.0
        }
    })
}

/// `A_HiPPO = -(A^0 + I)`, `B_HiPPO[n] = sqrt(2n + 1)`.
pub fn hippo_legs_reference(n_basis: usize) -> Result<HippoReference> {
    if n_basis == 0 || n_basis > MAX_BASIS {
        return Err(argument(format!(
            "basis size must be in 1..={MAX_BASIS}, got {n_basis}"
        )));
    }
    let a0 = legs_a0(n_basis);
    let a_hippo = -(a0 + DMatrix::<f64>::identity(n_basis, n_basis));
    let b_hippo = DVector::from_fn(n_basis, |n, _| ((2 * n + 1) as f64).sqrt());
    Ok(HippoReference { a_hippo, b_hippo })
}

/// `-(a_gen + I)^T`, the generator side of the HiPPO identity.
pub fn hippo_from_generator(a_gen: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a_gen.nrows();
    -(a_gen + DMatrix::<f64>::identity(n, n)).transpose()
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(argument(format!("step must be finite and nonnegative, got {delta}")));
    }
    Ok(())
}

/// Exact discrete transition `A_d[(n, m)] = int_0^1 phi_n(z) phi_m(lag_d(z)) dz`,
/// refusing steps above [`DEFAULT_DELTA_CAP`].
pub fn build_a_delta(basis: &BasisSpec, warp: &WarpSpec, delta: f64, quad: &QuadratureConfig) -> Result<DMatrix<f64>> {
    if delta > DEFAULT_DELTA_CAP {
        return Err(argument(format!(
            "step {delta} exceeds the cap {DEFAULT_DELTA_CAP}; use build_a_delta_uncapped to override"
        )));
    }
    build_a_delta_uncapped(basis, warp, delta, quad)
}

/// [`build_a_delta`] without the step cap. Large `delta * N` evaluates the
/// basis far outside `(0, 1]` and loses accuracy to cancellation.
pub fn build_a_delta_uncapped(
    basis: &BasisSpec,
    warp: &WarpSpec,
    delta: f64,
    quad: &QuadratureConfig,
) -> Result<DMatrix<f64>> {
    check_delta(delta)?;
    let n = basis.n_basis();
    let (nodes, weights) = composite_nodes(0.0, 1.0, quad)?;
    let mut out = DMatrix::<f64>::zeros(n, n);
    let mut phi = vec![0.0; n];
    let mut lagged = vec![0.0; n];
    for (z, w) in nodes.iter().zip(&weights) {
        let zl = lag(warp, delta, *z)?;
        fill_phi(*z, &mut phi);
        fill_phi(zl, &mut lagged);
        if let Some(bad) = lagged.iter().find(|v| !v.is_finite()) {
            return Err(Error::Evaluation {
                abscissa: *z,
                message: format!("lagged basis value {bad}"),
            });
        }
        for row in 0..n {
            let left = w * phi[row];
            for col in 0..n {
                out[(row, col)] += left * lagged[col];
            }
        }
    }
    Ok(out)
}

/// Stable transition `A_d^-1 e^-d`, refusing inputs whose condition number
/// exceeds [`DEFAULT_MAX_CONDITION`].
pub fn correct_a_delta(a_delta: &DMatrix<f64>, delta: f64) -> Result<DMatrix<f64>> {
    correct_a_delta_with_limit(a_delta, delta, DEFAULT_MAX_CONDITION).map(|(m, _)| m)
}

/// [`correct_a_delta`] with an explicit condition limit; also returns the
/// 1-norm condition number of `a_delta`.
pub fn correct_a_delta_with_limit(
    a_delta: &DMatrix<f64>,
    delta: f64,
    max_condition: f64,
) -> Result<(DMatrix<f64>, f64)> {
    check_delta(delta)?;
    let (inv, cond) = invert_with_condition(a_delta)?;
    if cond.is_nan() || cond > max_condition {
        return Err(numeric(format!(
            "transition is ill-conditioned: condition number {cond:.3e} exceeds {max_condition:.1e}"
        )));
    }
    Ok((inv * (-delta).exp(), cond))
}

/// `A_back = A_d e^d`.
pub fn backward_shift(a_delta: &DMatrix<f64>, delta: f64) -> DMatrix<f64> {
    a_delta * delta.exp()
}

/// Shape assumed for the newest input over one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputModel {
    /// Impulse at the present.
    Dirac,
    /// Constant over the step.
    #[default]
    Zoh,
    /// Linear ramp between the previous and the newest sample.
    Foh,
}

impl InputModel {
    pub const ALL: [InputModel; 3] = [InputModel::Dirac, InputModel::Zoh, InputModel::Foh];

    pub fn as_str(&self) -> &'static str {
        match self {
            InputModel::Dirac => "dirac",
            InputModel::Zoh => "zoh",
            InputModel::Foh => "foh",
        }
    }
}

impl fmt::Display for InputModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for InputModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirac" | "delta" | "impulse" => Ok(InputModel::Dirac),
            "zoh" => Ok(InputModel::Zoh),
            "foh" => Ok(InputModel::Foh),
            other => Err(argument(format!("unknown input model {other:?}"))),
        }
    }
}

/// Discrete input vectors. First-order hold needs both samples of the step:
/// its contribution is `next * u_{t+d} + prev * u_t`.
#[derive(Debug, Clone, PartialEq)]
pub enum InputVector {
    Single(DVector<f64>),
    FirstOrderHold { next: DVector<f64>, prev: DVector<f64> },
}

impl InputVector {
    pub fn len(&self) -> usize {
        match self {
            InputVector::Single(b) => b.len(),
            InputVector::FirstOrderHold { next, .. } => next.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Response to an input held constant across the step.
    pub fn total(&self) -> DVector<f64> {
        match self {
            InputVector::Single(b) => b.clone(),
            InputVector::FirstOrderHold { next, prev } => next + prev,
        }
    }
}

/// `int_lo^1 phi_n(z) h(z) dz` for every `n`.
fn project_on_interval<H>(basis: &BasisSpec, lo: f64, weight: H, quad: &QuadratureConfig) -> Result<DVector<f64>>
where
    H: Fn(f64) -> f64,
{
    let n = basis.n_basis();
    let (nodes, weights) = composite_nodes(lo, 1.0, quad)?;
    let mut out = DVector::<f64>::zeros(n);
    let mut phi = vec![0.0; n];
    for (z, w) in nodes.iter().zip(&weights) {
        let h = weight(*z);
        if !h.is_finite() {
            return Err(Error::Evaluation {
                abscissa: *z,
                message: format!("input shape returned {h}"),
            });
        }
        fill_phi(*z, &mut phi);
        for (o, p) in out.iter_mut().zip(&phi) {
            *o += w * h * p;
        }
    }
    Ok(out)
}

/// Discrete input vector(s) for one step under the given hold model.
///
/// * Dirac: `phi_n(1) |f'(0)|`, independent of `delta`.
/// * ZOH: `I_1 = int_{f(-d)}^1 phi_n dz`.
/// * FOH: `next = I_1 + I_g / d`, `prev = -I_g / d` with
///   `I_g = int_{f(-d)}^1 phi_n g dz`.
pub fn build_b_delta(
    basis: &BasisSpec,
    warp: &WarpSpec,
    delta: f64,
    model: InputModel,
    quad: &QuadratureConfig,
) -> Result<InputVector> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(argument(format!("step must be positive, got {delta}")));
    }
    match model {
        InputModel::Dirac => {
            let fp0 = warp.f_prime(0.0).abs();
            Ok(InputVector::Single(DVector::from_iterator(
                basis.n_basis(),
                boundary_values(basis).into_iter().map(|b| b * fp0),
            )))
        }
        InputModel::Zoh => {
            let lo = warp.f(-delta);
            Ok(InputVector::Single(project_on_interval(basis, lo, |_| 1.0, quad)?))
        }
        InputModel::Foh => {
            let lo = warp.f(-delta);
            let i1 = project_on_interval(basis, lo, |_| 1.0, quad)?;
            let ig = project_on_interval(basis, lo, |z| warp.g(z), quad)?;
            let ramp = ig / delta;
            Ok(InputVector::FirstOrderHold {
                next: &i1 + &ramp,
                prev: -ramp,
            })
        }
    }
}

/// Discrete system for one step size.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMatrices {
    pub delta: f64,
    /// Exact lag transition `A_d`.
    pub a_delta: DMatrix<f64>,
    /// `A_d^-1 e^-d`.
    pub a_corrected: DMatrix<f64>,
    pub b_delta: InputVector,
    pub input_model: InputModel,
}

impl DiscreteMatrices {
    pub fn build(
        basis: &BasisSpec,
        warp: &WarpSpec,
        delta: f64,
        model: InputModel,
        quad: &QuadratureConfig,
    ) -> Result<Self> {
        if delta.is_nan() || delta <= 0.0 {
            return Err(argument(format!("step must be positive, got {delta}")));
        }
        let a_delta = build_a_delta(basis, warp, delta, quad)?;
        let a_corrected = correct_a_delta(&a_delta, delta)?;
        let b_delta = build_b_delta(basis, warp, delta, model, quad)?;
        Ok(Self {
            delta,
            a_delta,
            a_corrected,
            b_delta,
            input_model: model,
        })
    }

    /// Coefficient-update matrix for `c_{t+d} = T c_t + B u`, i.e. the
    /// transpose of `a_corrected`; equals `exp(d * A_HiPPO)` for the
    /// exponential warp.
    pub fn state_transition(&self) -> DMatrix<f64> {
        self.a_corrected.transpose()
    }
}
