// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Feeds the Lorenz x trace to the lag-operator recurrence and to the
// bilinear HiPPO-LegS baseline, then compares their reconstructions.

use lagssm::experiment::{run_reconstruction, ExperimentConfig};

fn main() -> lagssm::Result<()> {
    let r = run_reconstruction(&ExperimentConfig::default())?;
    let s = &r.summary;
    println!(
        "N={} delta={} T={} ({} steps)",
        s.n_basis, s.delta, s.total_time, s.n_steps
    );
    println!("mse(lag, baseline)     = {:.3e}", s.mse);
    println!("mse(lag, input)        = {:.3e}", s.mse_lag_vs_input);
    println!("mse(baseline, input)   = {:.3e}", s.mse_baseline_vs_input);
    println!("tail max |lag - base|  = {:.3e}", s.tail_max_abs_diff);
    println!("      s     u_true      u_hat   baseline");
    for i in (r.grid.len() - 5)..r.grid.len() {
        println!(
            "{:7.3} {:10.5} {:10.5} {:10.5}",
            r.grid[i], r.input[i], r.lag[i], r.baseline[i]
        );
    }
    Ok(())
}
