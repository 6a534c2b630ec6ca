// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Test signals: the Lorenz-63 x component, sine mixtures, and a
//! zero-order-hold view of any sampled trace.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{argument, numeric, Error, Result};
use crate::recurrence::SignalTrace;

/// Largest integration step accepted for the Lorenz system.
pub const LORENZ_MAX_DT: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LorenzParams {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
    pub x0: [f64; 3],
    pub dt: f64,
    /// Number of samples returned.
    pub steps: usize,
    /// Steps integrated and discarded before the first sample.
    pub burn_in: usize,
}

impl Default for LorenzParams {
    fn default() -> Self {
        Self {
            sigma: 10.0,
            rho: 28.0,
            beta: 8.0 / 3.0,
            x0: [1.0, 1.0, 1.0],
            dt: 0.01,
            steps: 1000,
            burn_in: 0,
        }
    }
}

impl LorenzParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0 && self.dt <= LORENZ_MAX_DT) {
            return Err(argument(format!(
                "Lorenz step must be in (0, {LORENZ_MAX_DT}], got {}",
                self.dt
            )));
        }
        if self.steps == 0 {
            return Err(argument("Lorenz trace needs at least one sample"));
        }
        let all = [self.sigma, self.rho, self.beta, self.x0[0], self.x0[1], self.x0[2]];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(argument("Lorenz parameters must be finite"));
        }
        Ok(())
    }
}

pub fn lorenz_derivative(p: &LorenzParams, s: [f64; 3]) -> [f64; 3] {
    let [x, y, z] = s;
    [p.sigma * (y - x), x * (p.rho - z) - y, x * y - p.beta * z]
}

/// Classical fourth-order Runge-Kutta step.
pub fn rk4_step(p: &LorenzParams, s: [f64; 3], dt: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], h: f64| [a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]];
    let k1 = lorenz_derivative(p, s);
    let k2 = lorenz_derivative(p, add(s, k1, dt / 2.0));
    let k3 = lorenz_derivative(p, add(s, k2, dt / 2.0));
    let k4 = lorenz_derivative(p, add(s, k3, dt));
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Full Lorenz state after `burn_in + steps - 1` steps, one row per sample.
pub fn lorenz_states(p: &LorenzParams) -> Result<Vec<[f64; 3]>> {
    p.validate()?;
    let mut s = p.x0;
    for k in 0..p.burn_in {
        s = rk4_step(p, s, p.dt);
        if s.iter().any(|v| !v.is_finite()) {
            return Err(numeric(format!("Lorenz integration diverged during burn-in step {k}")));
        }
    }
    let mut out = Vec::with_capacity(p.steps);
    out.push(s);
    for k in 1..p.steps {
        s = rk4_step(p, s, p.dt);
        if s.iter().any(|v| !v.is_finite()) {
            return Err(numeric(format!("Lorenz integration diverged at step {k}")));
        }
        out.push(s);
    }
    Ok(out)
}

/// x component of the Lorenz system sampled every `dt`, stamped from 0.
pub fn lorenz63(p: &LorenzParams) -> Result<SignalTrace> {
    let xs = lorenz_states(p)?.into_iter().map(|s| s[0]).collect();
    SignalTrace::new(0.0, p.dt, xs)
}

/// Samples of `sum_i amps[i] * sin(2 pi freqs[i] t + phases[i])` at
/// `t = k * delta`, `k < steps`. Empty lists give the zero signal.
pub fn sine_mixture(freqs: &[f64], amps: &[f64], phases: &[f64], delta: f64, steps: usize) -> Result<SignalTrace> {
    if freqs.len() != amps.len() || freqs.len() != phases.len() {
        return Err(argument(format!(
            "sine lists differ in length: {} frequencies, {} amplitudes, {} phases",
            freqs.len(),
            amps.len(),
            phases.len()
        )));
    }
    if freqs.iter().chain(amps).chain(phases).any(|v| !v.is_finite()) {
        return Err(argument("sine parameters must be finite"));
    }
    let values = (0..steps)
        .map(|k| {
            let t = k as f64 * delta;
            let mut acc = 0.0;
            for i in 0..freqs.len() {
                acc += amps[i] * (std::f64::consts::TAU * freqs[i] * t + phases[i]).sin();
            }
            acc
        })
        .collect();
    SignalTrace::new(0.0, delta, values)
}

/// Piecewise-constant continuation of a trace: sample `k` holds on
/// `[t_k, t_k + delta)`, zero before the first sample, and the last sample
/// holds up to the end of its interval.
#[derive(Debug, Clone)]
pub struct ZeroOrderHold<'a> {
    trace: &'a SignalTrace,
}

pub fn zoh_function(trace: &SignalTrace) -> ZeroOrderHold<'_> {
    ZeroOrderHold { trace }
}

impl ZeroOrderHold<'_> {
    pub fn index(&self, s: f64) -> Option<usize> {
        let x = (s - self.trace.start()) / self.trace.delta();
        // snap ratios that miss an integer only by rounding
        let nearest = x.round();
        let x = if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
            nearest
        } else {
            x
        };
        if x < 0.0 {
            return None;
        }
        let k = x.floor() as usize;
        if k < self.trace.len() {
            Some(k)
        } else if k == self.trace.len() && s <= self.trace.end() {
            Some(k - 1)
        } else {
            None
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.index(s).map_or(0.0, |k| self.trace.values()[k])
    }
}

/// Zero mean and unit maximum absolute value. An all-constant trace maps
/// to zeros.
pub fn normalize(trace: &SignalTrace) -> SignalTrace {
    let n = trace.len().max(1) as f64;
    let mean = trace.values().iter().sum::<f64>() / n;
    let peak = trace.values().iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    if peak == 0.0 {
        return trace.map_values(|_| 0.0);
    }
    trace.map_values(|v| (v - mean) / peak)
}

/// Writes `t,u` rows.
pub fn write_trace_csv<W: Write>(out: W, trace: &SignalTrace) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "u"])?;
    for (t, u) in trace.samples() {
        w.write_record([format!("{t:?}"), format!("{u:?}")])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a two-column `t,u` CSV with a header row.
pub fn read_trace_csv<R: Read>(input: R) -> Result<SignalTrace> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut pairs = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::Format(format!(
                "row {}: expected 2 columns, got {}",
                line + 1,
                rec.len()
            )));
        }
        let parse = |f: &str| {
            f.parse::<f64>()
                .map_err(|e| Error::Format(format!("row {}: bad number {f:?}: {e}", line + 1)))
        };
        let t = parse(&rec[0])?;
        let u = parse(&rec[1])?;
        if !(t.is_finite() && u.is_finite()) {
            return Err(Error::Format(format!("row {}: non-finite value", line + 1)));
        }
        pairs.push((t, u));
    }
    SignalTrace::from_pairs(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorenz_derivative_values() {
        let p = LorenzParams::default();
        assert_eq!(lorenz_derivative(&p, [1.0, 1.0, 1.0]), [0.0, 26.0, 1.0 - 8.0 / 3.0]);
        assert_eq!(lorenz_derivative(&p, [0.0, 0.0, 0.0]), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn origin_is_a_fixed_point() {
        let p = LorenzParams {
            x0: [0.0; 3],
            steps: 10,
            ..Default::default()
        };
        let tr = lorenz63(&p).unwrap();
        assert!(tr.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn lorenz_trace_shape() {
        let p = LorenzParams::default();
        let tr = lorenz63(&p).unwrap();
        assert_eq!(tr.len(), 1000);
        assert_eq!(tr.values()[0], 1.0);
        assert_eq!(tr.start(), 0.0);
        let burned = lorenz63(&LorenzParams {
            burn_in: 5,
            steps: 3,
            ..Default::default()
        })
        .unwrap();
        let full = lorenz63(&LorenzParams {
            steps: 8,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(burned.values(), &full.values()[5..]);
    }

    #[test]
    fn lorenz_rejects_large_step() {
        let p = LorenzParams {
            dt: 0.05,
            ..Default::default()
        };
        assert!(matches!(lorenz63(&p), Err(Error::Argument(_))));
        assert!(lorenz63(&LorenzParams {
            steps: 0,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn sine_samples() {
        let tr = sine_mixture(&[1.0], &[1.0], &[0.0], 0.25, 4).unwrap();
        for (got, want) in tr.values().iter().zip([0.0, 1.0, 0.0, -1.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        let tr = sine_mixture(&[1.0, 2.0], &[1.0, 0.5], &[0.0, 0.3], 0.1, 20).unwrap();
        for (k, v) in tr.values().iter().enumerate() {
            let t = k as f64 * 0.1;
            let want = (std::f64::consts::TAU * t).sin() + 0.5 * (2.0 * std::f64::consts::TAU * t + 0.3).sin();
            assert!((v - want).abs() < 1e-15);
        }
        let doubled = sine_mixture(&[1.0, 2.0], &[2.0, 1.0], &[0.0, 0.3], 0.1, 20).unwrap();
        for (a, b) in tr.values().iter().zip(doubled.values()) {
            assert_eq!((2.0 * a).to_bits(), b.to_bits());
        }
        let empty = sine_mixture(&[], &[], &[], 0.1, 5).unwrap();
        assert_eq!(empty.values(), &[0.0; 5]);
        assert!(matches!(
            sine_mixture(&[1.0], &[], &[0.0], 0.1, 5),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn zoh_lookup() {
        let tr = SignalTrace::new(0.0, 0.1, vec![1.0, 2.0, 3.0]).unwrap();
        let h = zoh_function(&tr);
        assert_eq!(h.eval(-0.01), 0.0);
        assert_eq!(h.eval(0.0), 1.0);
        assert_eq!(h.eval(0.05), 1.0);
        assert_eq!(h.eval(0.1), 2.0);
        assert_eq!(h.eval(0.3 - 1e-17), 3.0);
        assert_eq!(h.eval(0.29999), 3.0);
        assert_eq!(h.eval(0.3), 3.0);
        assert_eq!(h.eval(0.31), 0.0);
        // 3 * 0.1 is not exactly 0.3, the snap keeps it on sample 3's boundary
        assert_eq!(h.eval(3.0 * 0.1), 3.0);
    }

    #[test]
    fn normalize_cases() {
        let tr = SignalTrace::new(0.0, 1.0, vec![1.0, 3.0, 2.0]).unwrap();
        let n = normalize(&tr);
        assert_eq!(n.values(), &[-1.0, 1.0, 0.0]);
        let flat = SignalTrace::new(0.0, 1.0, vec![4.0; 3]).unwrap();
        assert!(normalize(&flat).values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn trace_csv_round_trip() {
        let tr = lorenz63(&LorenzParams {
            steps: 50,
            ..Default::default()
        })
        .unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &tr).unwrap();
        let back = read_trace_csv(buf.as_slice()).unwrap();
        assert_eq!(back.values(), tr.values());
        assert!((back.delta() - tr.delta()).abs() < 1e-15);
        assert!(read_trace_csv("t,u\n0,1\n0.1\n".as_bytes()).is_err());
        assert!(read_trace_csv("t,u\n0,1\n0.1,x\n".as_bytes()).is_err());
    }
}
