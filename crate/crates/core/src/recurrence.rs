// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! The online memory update `c_{t+d} = A c_t + B u`, reconstruction of the
//! compressed history, and the offline projection it approximates.

use std::io::Write;

use nalgebra::{DMatrix, DVector};

use crate::basis::{fill_phi, BasisSpec};
use crate::error::{argument, domain, numeric, Result};
use crate::matrices::{bilinear_discretize, hippo_legs_reference, DiscreteMatrices, InputVector};
use crate::quadrature::{composite_nodes, QuadratureConfig};
use crate::warp::{warp_forward, warp_inverse, WarpSpec};

/// Projection coefficients of the history up to time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryState {
    pub coeffs: DVector<f64>,
    pub t: f64,
}

impl MemoryState {
    pub fn zero(n: usize, t: f64) -> Self {
        Self {
            coeffs: DVector::zeros(n),
            t,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Uniformly sampled scalar signal. Sample `k` is stamped `start + k * delta`
/// and, under a zero-order hold, covers `[start + k delta, start + (k+1) delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalTrace {
    start: f64,
    delta: f64,
    values: Vec<f64>,
}

impl SignalTrace {
    pub fn new(start: f64, delta: f64, values: Vec<f64>) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(argument(format!("sample spacing must be positive, got {delta}")));
        }
        if !start.is_finite() {
            return Err(argument("trace start time must be finite"));
        }
        Ok(Self { start, delta, values })
    }

    /// Builds a trace from `(time, value)` pairs, checking strictly
    /// increasing, uniformly spaced times (tolerance 1e-12, scaled by `|t|`
    /// beyond 1).
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(argument("a trace needs at least two samples to define its spacing"));
        }
        let start = pairs[0].0;
        let delta = (pairs[pairs.len() - 1].0 - start) / (pairs.len() - 1) as f64;
        if delta.is_nan() || delta <= 0.0 {
            return Err(argument("sample times must be strictly increasing"));
        }
        for (k, (t, _)) in pairs.iter().enumerate() {
            let expected = start + k as f64 * delta;
            if (t - expected).abs() > 1e-12 * t.abs().max(1.0) {
                return Err(argument(format!(
                    "sample {k} at t = {t} breaks uniform spacing {delta} (expected {expected})"
                )));
            }
        }
        Self::new(start, delta, pairs.iter().map(|p| p.1).collect())
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.start + k as f64 * self.delta
    }

    /// End of the last hold interval.
    pub fn end(&self) -> f64 {
        self.time(self.values.len())
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(k, v)| (self.time(k), *v))
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            start: self.start,
            delta: self.delta,
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }
}

/// A linear time-invariant update with a fixed step.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRecurrence {
    pub transition: DMatrix<f64>,
    pub input: InputVector,
    pub delta: f64,
}

impl LinearRecurrence {
    pub fn new(transition: DMatrix<f64>, input: InputVector, delta: f64) -> Result<Self> {
        if !transition.is_square() || transition.nrows() != input.len() {
            return Err(argument(format!(
                "transition {}x{} does not match input length {}",
                transition.nrows(),
                transition.ncols(),
                input.len()
            )));
        }
        if let InputVector::FirstOrderHold { next, prev } = &input {
            if next.len() != prev.len() {
                return Err(argument("first-order hold vectors differ in length"));
            }
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(argument(format!("step must be positive, got {delta}")));
        }
        Ok(Self {
            transition,
            input,
            delta,
        })
    }

    /// Lag-operator model: corrected transition in update orientation and
    /// the system's own input vector(s).
    pub fn lag_operator(system: &DiscreteMatrices) -> Result<Self> {
        Self::new(system.state_transition(), system.b_delta.clone(), system.delta)
    }

    /// HiPPO-LegS baseline discretized with the bilinear transform.
    pub fn hippo_bilinear(n_basis: usize, delta: f64) -> Result<Self> {
        let h = hippo_legs_reference(n_basis)?;
        let (a, b) = bilinear_discretize(&h.a_hippo, &h.b_hippo, delta)?;
        Self::new(a, InputVector::Single(b), delta)
    }

    pub fn n_state(&self) -> usize {
        self.transition.nrows()
    }

    /// One update. `u_prev` is required exactly when the input is a
    /// first-order-hold pair.
    pub fn step(&self, state: &MemoryState, u_next: f64, u_prev: Option<f64>) -> Result<MemoryState> {
        let n = self.n_state();
        if state.len() != n {
            return Err(argument(format!(
                "state length {} does not match system size {n}",
                state.len()
            )));
        }
        let mut out = DVector::<f64>::zeros(n);
        // explicit row sums so block-diagonal systems reproduce their blocks bit for bit
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.transition[(i, j)] * state.coeffs[j];
            }
            out[i] = acc;
        }
        match (&self.input, u_prev) {
            (InputVector::Single(b), None) => {
                for i in 0..n {
                    out[i] += b[i] * u_next;
                }
            }
            (InputVector::Single(_), Some(_)) => {
                return Err(argument("previous sample given to a single-vector input model"));
            }
            (InputVector::FirstOrderHold { next, prev }, Some(up)) => {
                for i in 0..n {
                    out[i] += next[i] * u_next + prev[i] * up;
                }
            }
            (InputVector::FirstOrderHold { .. }, None) => {
                return Err(argument("first-order hold needs the previous sample"));
            }
        }
        Ok(MemoryState {
            coeffs: out,
            t: state.t + self.delta,
        })
    }

    /// Folds [`step`](Self::step) over the trace from the zero state at the
    /// trace start. Returns the state after every sample; times are
    /// `start + (k + 1) delta`, computed from the step count.
    pub fn run(&self, trace: &SignalTrace) -> Result<Vec<MemoryState>> {
        if trace.is_empty() {
            return Err(argument("cannot run on an empty trace"));
        }
        if (trace.delta() - self.delta).abs() > 1e-12 * self.delta {
            return Err(argument(format!(
                "trace spacing {} differs from the system step {}",
                trace.delta(),
                self.delta
            )));
        }
        let fo = matches!(self.input, InputVector::FirstOrderHold { .. });
        let mut state = MemoryState::zero(self.n_state(), trace.start());
        let mut out = Vec::with_capacity(trace.len());
        let mut prev = 0.0;
        for (k, u) in trace.values().iter().enumerate() {
            let mut next = self.step(&state, *u, fo.then_some(prev))?;
            next.t = trace.start() + (k + 1) as f64 * self.delta;
            if next.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(numeric(format!("state diverged at step {k}")));
            }
            prev = *u;
            out.push(next.clone());
            state = next;
        }
        Ok(out)
    }

    /// Final state only.
    pub fn run_final(&self, trace: &SignalTrace) -> Result<MemoryState> {
        Ok(self.run(trace)?.pop().expect("nonempty trace"))
    }
}

/// `u_hat(s) = sum_n c_n phi_n(sigma_t(s))` on the grid.
pub fn reconstruct(state: &MemoryState, basis: &BasisSpec, warp: &WarpSpec, s_grid: &[f64]) -> Result<Vec<f64>> {
    let n = basis.n_basis();
    if state.len() != n {
        return Err(argument(format!(
            "state length {} does not match basis size {n}",
            state.len()
        )));
    }
    let mut phi = vec![0.0; n];
    s_grid
        .iter()
        .map(|s| {
            if *s > state.t {
                return Err(domain(format!(
                    "reconstruction time {s} lies after the state time {}",
                    state.t
                )));
            }
            let z = warp_forward(warp, state.t, *s)?;
            fill_phi(z, &mut phi);
            Ok(phi.iter().zip(state.coeffs.iter()).map(|(p, c)| p * c).sum())
        })
        .collect()
}

/// Offline projection `c_n = int_0^1 phi_n(z) u(sigma_t^-1(z)) dz`.
pub fn project_direct<F>(
    u: F,
    basis: &BasisSpec,
    warp: &WarpSpec,
    t: f64,
    quad: &QuadratureConfig,
) -> Result<MemoryState>
where
    F: Fn(f64) -> f64,
{
    let n = basis.n_basis();
    let (nodes, weights) = composite_nodes(0.0, 1.0, quad)?;
    let mut coeffs = DVector::<f64>::zeros(n);
    let mut phi = vec![0.0; n];
    for (z, w) in nodes.iter().zip(&weights) {
        let s = warp_inverse(warp, t, *z)?;
        let v = u(s);
        if !v.is_finite() {
            return Err(crate::Error::Evaluation {
                abscissa: s,
                message: format!("signal returned {v}"),
            });
        }
        fill_phi(*z, &mut phi);
        for (c, p) in coeffs.iter_mut().zip(&phi) {
            *c += w * v * p;
        }
    }
    Ok(MemoryState { coeffs, t })
}

/// CSV with columns `t, c_0, ..., c_{N-1}`.
pub fn write_trajectory_csv<W: Write>(out: W, states: &[MemoryState]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let n = states.first().map_or(0, MemoryState::len);
    let mut header = vec!["t".to_string()];
    header.extend((0..n).map(|i| format!("c_{i}")));
    w.write_record(&header)?;
    for s in states {
        let mut rec = vec![format!("{:?}", s.t)];
        rec.extend(s.coeffs.iter().map(|c| format!("{c:?}")));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
