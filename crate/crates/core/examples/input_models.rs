// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Compares the Dirac, zero-order-hold and first-order-hold input vectors
// with the generator input vector as the step shrinks.

use lagssm::matrices::{build_b_delta, build_b_gen};
use lagssm::{BasisSpec, InputModel, InputVector, QuadratureConfig, WarpSpec};

fn main() -> lagssm::Result<()> {
    let basis = BasisSpec::legendre(32)?;
    let warp = WarpSpec::default();
    let quad = QuadratureConfig::default();
    let b_gen = build_b_gen(&basis, &warp);
    for delta in [1e-2, 1e-4, 1e-6, 1e-7] {
        for model in InputModel::ALL {
            let b = build_b_delta(&basis, &warp, delta, model, &quad)?;
            let scale = if model == InputModel::Dirac { 1.0 } else { delta };
            let rel = (b.total() / scale - &b_gen).norm() / b_gen.norm();
            let extra = match &b {
                InputVector::FirstOrderHold { prev, .. } => {
                    format!(", |v_prev|/(d |B_gen|) = {:.3}", prev.norm() / delta / b_gen.norm())
                }
                InputVector::Single(_) => String::new(),
            };
            println!("delta={delta:e} {model:>5}: |B/d - B_gen|/|B_gen| = {rel:.2e}{extra}");
        }
    }
    Ok(())
}
