// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Prints the three comparison tables without writing files.

use lagssm::experiment::{compute_tables, ExperimentConfig};

fn main() -> lagssm::Result<()> {
    let tables = compute_tables(&ExperimentConfig::default())?;
    println!("exact transition vs exp(delta A_gen), N=64");
    for r in &tables.table1 {
        println!("  delta={:<7e} diff={:.3e}", r.delta, r.diff);
    }
    println!("HiPPO-LegS vs -(A_gen + I)^T");
    for r in &tables.table2 {
        println!("  N={:<3} diff={:.3e}", r.n_basis, r.diff);
    }
    println!("corrected transition vs bilinear HiPPO-LegS, N=64");
    for r in &tables.table3 {
        println!(
            "  delta={:<7e} diff={:.4e} vs exact exp={:.2e} cond(A_d)={:.2e}",
            r.delta, r.diff, r.diff_exact_exp, r.cond_a_delta
        );
    }
    for c in tables.checks() {
        println!("{c}");
    }
    Ok(())
}
