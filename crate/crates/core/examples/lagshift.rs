// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Shifts the highest basis function one step backward and forward in time
// and compares the amplitudes of the results.

use lagssm::experiment::{compute_lagshift, ExperimentConfig, ShiftDirection};

fn peak(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

fn main() -> lagssm::Result<()> {
    let cfg = ExperimentConfig::default();
    let n = cfg.n_basis - 1;
    let back = compute_lagshift(&cfg, n, ShiftDirection::Backward, cfg.delta)?;
    let fwd = compute_lagshift(&cfg, n, ShiftDirection::Forward, cfg.delta)?;
    println!("n={n}, delta={}", cfg.delta);
    println!("max |original| = {:.4}", peak(&back.original));
    println!("max |backward| = {:.4}", peak(&back.shifted));
    println!("max |forward|  = {:.4}", peak(&fwd.shifted));
    Ok(())
}
