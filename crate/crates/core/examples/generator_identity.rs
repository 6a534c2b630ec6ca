// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Builds the continuous-time generator from the exponential warp and
// compares it with the closed-form HiPPO-LegS state matrix.

use lagssm::matrices::{frobenius_rel_diff, hippo_from_generator, hippo_legs_reference};
use lagssm::{BasisSpec, GeneratorMatrices, QuadratureConfig, WarpSpec};

fn main() -> lagssm::Result<()> {
    let quad = QuadratureConfig::default();
    let warp = WarpSpec::default();
    for n in [10, 30, 50] {
        let gen = GeneratorMatrices::build(&BasisSpec::legendre(n)?, &warp, &quad)?;
        let hippo = hippo_legs_reference(n)?;
        let diff = frobenius_rel_diff(&hippo.a_hippo, &hippo_from_generator(&gen.a_gen))?;
        let b_diff = (&gen.b_gen - &hippo.b_hippo).amax();
        println!("N={n:>2}: A diff {diff:.3e}, max |B_gen - B_hippo| {b_diff:.1e}");
    }
    let small = GeneratorMatrices::build(&BasisSpec::legendre(4)?, &warp, &quad)?;
    println!("A_gen for N=4 (upper triangular):{:.4}", small.a_gen);
    Ok(())
}
