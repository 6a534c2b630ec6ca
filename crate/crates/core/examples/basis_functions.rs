// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Evaluates the shifted Legendre basis and checks orthonormality on (0, 1].

use lagssm::basis::{eval_phi, eval_phi_all};
use lagssm::quadrature::integrate;
use lagssm::{BasisSpec, QuadratureConfig};

fn main() -> lagssm::Result<()> {
    let basis = BasisSpec::legendre(8)?;
    let quad = QuadratureConfig::default();
    for z in [0.0, 0.25, 0.5, 1.0] {
        let row: Vec<String> = eval_phi_all(&basis, z)
            .iter()
            .take(4)
            .map(|v| format!("{v:+.4}"))
            .collect();
        println!("phi_0..3({z:.2}) = [{}]", row.join(", "));
    }
    let mut worst: f64 = 0.0;
    for n in 0..8 {
        for m in 0..8 {
            let ip = integrate(
                |z| eval_phi(&basis, n, z).unwrap() * eval_phi(&basis, m, z).unwrap(),
                0.0,
                1.0,
                &quad,
            )?;
            let want = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((ip - want).abs());
        }
    }
    println!("max |<phi_n, phi_m> - delta_nm| over n, m < 8: {worst:.2e}");
    Ok(())
}
