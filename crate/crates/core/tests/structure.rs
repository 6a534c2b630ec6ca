// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

use lagssm::basis::eval_phi_all;
use lagssm::matrices::{
    backward_shift, build_a_delta, build_a_gen, correct_a_delta, frobenius_rel_diff, hippo_from_generator,
    hippo_legs_reference,
};
use lagssm::quadrature::composite_nodes;
use lagssm::{BasisSpec, DMatrix, QuadratureConfig, WarpSpec};

fn setup(n: usize) -> (BasisSpec, WarpSpec, QuadratureConfig) {
    (
        BasisSpec::legendre(n).unwrap(),
        WarpSpec::default(),
        QuadratureConfig::default(),
    )
}

#[test]
fn basis_is_orthonormal_below_64() {
    let (basis, _, quad) = setup(64);
    let (nodes, weights) = composite_nodes(0.0, 1.0, &quad).unwrap();
    let mut gram = DMatrix::<f64>::zeros(64, 64);
    for (z, w) in nodes.iter().zip(&weights) {
        let phi = eval_phi_all(&basis, *z);
        for n in 0..64 {
            for m in 0..64 {
                gram[(n, m)] += w * phi[n] * phi[m];
            }
        }
    }
    let err = (gram - DMatrix::<f64>::identity(64, 64)).amax();
    assert!(err <= 1e-12, "{err:e}");
}

#[test]
fn transition_is_upper_triangular_with_growing_diagonal() {
    let (basis, warp, quad) = setup(64);
    for delta in [1e-4, 1e-3, 1e-2] {
        let a = build_a_delta(&basis, &warp, delta, &quad).unwrap();
        for n in 0..64 {
            let want = (n as f64 * delta).exp();
            assert!((a[(n, n)] / want - 1.0).abs() <= 1e-9, "delta={delta} n={n}");
            for m in 0..n {
                assert!(a[(n, m)].abs() <= 1e-9, "delta={delta} ({n},{m}) = {:e}", a[(n, m)]);
            }
        }
    }
}

#[test]
fn transitions_compose() {
    let (basis, warp, quad) = setup(64);
    let (d1, d2) = (0.004, 0.006);
    let a1 = build_a_delta(&basis, &warp, d1, &quad).unwrap();
    let a2 = build_a_delta(&basis, &warp, d2, &quad).unwrap();
    let a12 = build_a_delta(&basis, &warp, d1 + d2, &quad).unwrap();
    assert!(frobenius_rel_diff(&a12, &(&a1 * &a2)).unwrap() <= 1e-9);
    assert!(frobenius_rel_diff(&a12, &(&a2 * &a1)).unwrap() <= 1e-9);
}

#[test]
fn corrected_diagonal_and_shift_inverse() {
    let (basis, warp, quad) = setup(64);
    for delta in [1e-3, 1e-2] {
        let a = build_a_delta(&basis, &warp, delta, &quad).unwrap();
        let c = correct_a_delta(&a, delta).unwrap();
        for n in 0..64 {
            let want = (-(n as f64 + 1.0) * delta).exp();
            assert!((c[(n, n)] / want - 1.0).abs() <= 1e-9);
        }
        let prod = backward_shift(&a, delta) * &c;
        assert!((prod - DMatrix::<f64>::identity(64, 64)).amax() <= 1e-9);
    }
}

#[test]
fn hippo_forms_agree_across_sizes() {
    for n in [1, 2, 10, 30, 50, 64] {
        let (basis, warp, quad) = setup(n);
        let a_gen = build_a_gen(&basis, &warp, &quad).unwrap();
        let h = hippo_legs_reference(n).unwrap();
        let d = frobenius_rel_diff(&h.a_hippo, &hippo_from_generator(&a_gen)).unwrap();
        assert!(d <= 1e-10, "N={n}: {d:e}");
    }
}
