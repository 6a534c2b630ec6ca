// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// The exact lag transition is the exponential of the generator, and its
// corrected inverse is the exponential of the stable HiPPO-LegS matrix.

use lagssm::matrices::{build_a_delta, build_a_gen, correct_a_delta, frobenius_rel_diff, matrix_exp};
use lagssm::{BasisSpec, DMatrix, QuadratureConfig, WarpSpec};

fn main() -> lagssm::Result<()> {
    let basis = BasisSpec::legendre(64)?;
    let warp = WarpSpec::default();
    let quad = QuadratureConfig::default();
    let a_gen = build_a_gen(&basis, &warp, &quad)?;
    let stable = -(&a_gen + DMatrix::<f64>::identity(64, 64));
    for delta in [1e-4, 1e-3, 1e-2] {
        let a_delta = build_a_delta(&basis, &warp, delta, &quad)?;
        let corrected = correct_a_delta(&a_delta, delta)?;
        println!(
            "delta={delta:e}: |A_d - exp(d A_gen)| {:.2e}, |corrected - exp(d A_stable)| {:.2e}, corrected[63,63] {:.6} (e^-0.64d {:.6})",
            frobenius_rel_diff(&a_delta, &matrix_exp(&(&a_gen * delta))?)?,
            frobenius_rel_diff(&corrected, &matrix_exp(&(&stable * delta))?)?,
            corrected[(63, 63)],
            (-64.0 * delta).exp(),
        );
    }
    Ok(())
}
