// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Runs two memories with different time scales side by side as one
// block-diagonal system. Each block reproduces its standalone run exactly.

use lagssm::matrices::compose_block_diagonal;
use lagssm::recurrence::LinearRecurrence;
use lagssm::signals::{lorenz63, normalize, LorenzParams};
use lagssm::{BasisSpec, DiscreteMatrices, InputModel, InputVector, QuadratureConfig, WarpSpec};

fn main() -> lagssm::Result<()> {
    let quad = QuadratureConfig::default();
    let delta = 0.01;
    let trace = normalize(&lorenz63(&LorenzParams::default())?);
    let mut blocks = Vec::new();
    let mut singles = Vec::new();
    for (n, tau) in [(16, 1.0), (32, 4.0)] {
        let sys = DiscreteMatrices::build(
            &BasisSpec::legendre(n)?,
            &WarpSpec::exponential(tau)?,
            delta,
            InputModel::Zoh,
            &quad,
        )?;
        let rec = LinearRecurrence::lag_operator(&sys)?;
        singles.push(rec.run_final(&trace)?);
        blocks.push((rec.transition.clone(), rec.input.total()));
    }
    let (a, b) = compose_block_diagonal(&blocks)?;
    let joint = LinearRecurrence::new(a, InputVector::Single(b), delta)?.run_final(&trace)?;
    let fast = joint.coeffs.rows(0, 16);
    let slow = joint.coeffs.rows(16, 32);
    println!("fast block identical: {}", fast == singles[0].coeffs);
    println!("slow block identical: {}", slow == singles[1].coeffs);
    println!("c_0 fast={:.5} slow={:.5}", fast[0], slow[0]);
    Ok(())
}
