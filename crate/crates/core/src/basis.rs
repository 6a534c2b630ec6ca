// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Orthonormal basis on the canonical interval `(0, 1]`.
//!
//! The only family is the shifted, normalized Legendre basis
//! `phi_n(z) = sqrt(2n + 1) * P_n(2z - 1)`. Evaluation uses Bonnet's
//! three-term recurrence and accepts any real `z`: the exact discrete
//! transition evaluates `phi_m` at lagged coordinates beyond 1, where the
//! polynomial is continued analytically.

use crate::error::{argument, Result};

/// Largest basis size accepted by [`BasisSpec::new`].
pub const MAX_BASIS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    LegendreShifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    family: BasisFamily,
    n_basis: usize,
}

impl BasisSpec {
    pub fn new(family: BasisFamily, n_basis: usize) -> Result<Self> {
        if n_basis == 0 || n_basis > MAX_BASIS {
            return Err(argument(format!(
                "basis size must be in 1..={MAX_BASIS}, got {n_basis}"
            )));
        }
        Ok(Self { family, n_basis })
    }

    /// Shifted Legendre basis of size `n_basis`.
    pub fn legendre(n_basis: usize) -> Result<Self> {
        Self::new(BasisFamily::LegendreShifted, n_basis)
    }

    pub fn family(&self) -> BasisFamily {
        self.family
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n >= self.n_basis {
            return Err(argument(format!(
                "basis index {n} out of range for N = {}",
                self.n_basis
            )));
        }
        Ok(())
    }
}

#[inline]
fn norm(n: usize) -> f64 {
    ((2 * n + 1) as f64).sqrt()
}

/// Legendre values `P_0(x) ..= P_{len-1}(x)` written into `out`.
fn legendre_values(x: f64, out: &mut [f64]) {
    let len = out.len();
    if len == 0 {
        return;
    }
    out[0] = 1.0;
    if len == 1 {
        return;
    }
    out[1] = x;
    for k in 1..len - 1 {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
}

/// Legendre values and derivatives, `P_k(x)` and `P'_k(x)` for `k < len`.
///
/// Uses `P'_{k+1} = (k + 1) P_k + x P'_k`, which has no singularity at
/// `x = +-1`.
fn legendre_values_and_derivs(x: f64, vals: &mut [f64], derivs: &mut [f64]) {
    legendre_values(x, vals);
    let len = vals.len();
    if len == 0 {
        return;
    }
    derivs[0] = 0.0;
    for k in 0..len - 1 {
        derivs[k + 1] = (k as f64 + 1.0) * vals[k] + x * derivs[k];
    }
}

/// `phi_n(z) = sqrt(2n + 1) * P_n(2z - 1)`.
pub fn eval_phi(spec: &BasisSpec, n: usize, z: f64) -> Result<f64> {
    spec.check_index(n)?;
    let mut vals = vec![0.0; n + 1];
    legendre_values(2.0 * z - 1.0, &mut vals);
    Ok(norm(n) * vals[n])
}

/// `d phi_n / dz = 2 sqrt(2n + 1) P'_n(2z - 1)`.
pub fn eval_phi_deriv(spec: &BasisSpec, n: usize, z: f64) -> Result<f64> {
    spec.check_index(n)?;
    let mut vals = vec![0.0; n + 1];
    let mut derivs = vec![0.0; n + 1];
    legendre_values_and_derivs(2.0 * z - 1.0, &mut vals, &mut derivs);
    Ok(2.0 * norm(n) * derivs[n])
}

/// All `N` basis values at `z` in one recurrence pass.
pub fn eval_phi_all(spec: &BasisSpec, z: f64) -> Vec<f64> {
    let mut out = vec![0.0; spec.n_basis];
    fill_phi(z, &mut out);
    out
}

/// All `N` basis derivatives at `z`.
pub fn eval_phi_deriv_all(spec: &BasisSpec, z: f64) -> Vec<f64> {
    let mut vals = vec![0.0; spec.n_basis];
    let mut derivs = vec![0.0; spec.n_basis];
    legendre_values_and_derivs(2.0 * z - 1.0, &mut vals, &mut derivs);
    for (n, d) in derivs.iter_mut().enumerate() {
        *d *= 2.0 * norm(n);
    }
    derivs
}

/// Writes `phi_0(z) .. phi_{out.len()-1}(z)` into `out`.
pub(crate) fn fill_phi(z: f64, out: &mut [f64]) {
    legendre_values(2.0 * z - 1.0, out);
    for (n, v) in out.iter_mut().enumerate() {
        *v *= norm(n);
    }
}

/// `phi_n(1) = sqrt(2n + 1)` for every `n < N`.
pub fn boundary_values(spec: &BasisSpec) -> Vec<f64> {
    (0..spec.n_basis).map(norm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureConfig};
    use proptest::prelude::*;

    fn spec(n: usize) -> BasisSpec {
        BasisSpec::legendre(n).unwrap()
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(BasisSpec::legendre(0).is_err());
        assert!(BasisSpec::legendre(257).is_err());
        assert!(BasisSpec::legendre(256).is_ok());
    }

    #[test]
    fn point_values() {
        let s = spec(8);
        assert_eq!(eval_phi(&s, 0, 0.3).unwrap(), 1.0);
        assert!((eval_phi(&s, 1, 1.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        // P_2(0) = -1/2
        assert!((eval_phi(&s, 2, 0.5).unwrap() + 5f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(eval_phi(&s, 8, 0.5).is_err());
    }

    #[test]
    fn derivative_values() {
        let s = spec(8);
        assert_eq!(eval_phi_deriv(&s, 0, 0.7).unwrap(), 0.0);
        for z in [-1.0, 0.0, 0.3, 1.0, 2.5] {
            let d = eval_phi_deriv(&s, 1, z).unwrap();
            assert!((d - 2.0 * 3f64.sqrt()).abs() < 1e-14);
        }
        let h = 1e-6;
        let fd = (eval_phi(&s, 5, 0.42 + h).unwrap() - eval_phi(&s, 5, 0.42 - h).unwrap()) / (2.0 * h);
        assert!((eval_phi_deriv(&s, 5, 0.42).unwrap() - fd).abs() <= 1e-6);
        assert!(eval_phi_deriv(&s, 9, 0.1).is_err());
    }

    #[test]
    fn derivative_at_endpoints_matches_closed_form() {
        // P'_n(1) = n(n+1)/2, P'_n(-1) = (-1)^(n+1) n(n+1)/2
        let s = spec(40);
        for n in 0..40 {
            let c = 2.0 * norm(n) * (n * (n + 1)) as f64 / 2.0;
            let right = eval_phi_deriv(&s, n, 1.0).unwrap();
            let left = eval_phi_deriv(&s, n, 0.0).unwrap();
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            assert!((right - c).abs() <= 1e-12 * c.max(1.0), "n={n}");
            assert!((left - sign * c).abs() <= 1e-12 * c.max(1.0), "n={n}");
        }
    }

    #[test]
    fn all_values_match_single_calls_bitwise() {
        let s = spec(4);
        let all = eval_phi_all(&s, 0.5);
        for (n, v) in all.iter().enumerate() {
            assert_eq!(v.to_bits(), eval_phi(&s, n, 0.5).unwrap().to_bits());
        }
        assert_eq!(eval_phi_all(&spec(1), 0.123), vec![1.0]);
        let two = eval_phi_all(&spec(2), 1.0);
        assert_eq!(two[0], 1.0);
        assert!((two[1] - 3f64.sqrt()).abs() < 1e-15);
        let d = eval_phi_deriv_all(&spec(12), 0.37);
        for (n, v) in d.iter().enumerate() {
            assert_eq!(v.to_bits(), eval_phi_deriv(&spec(12), n, 0.37).unwrap().to_bits());
        }
    }

    #[test]
    fn boundary_values_closed_form() {
        let b3 = boundary_values(&spec(3));
        assert_eq!(b3, vec![1.0, 3f64.sqrt(), 5f64.sqrt()]);
        assert_eq!(boundary_values(&spec(1)), vec![1.0]);
        let b64 = boundary_values(&spec(64));
        assert_eq!(b64[63], 127f64.sqrt());
        let s = spec(64);
        for (n, b) in b64.iter().enumerate() {
            assert_eq!(eval_phi(&s, n, 1.0).unwrap(), *b, "n={n}");
        }
    }

    #[test]
    fn orthonormal_up_to_64() {
        let s = spec(64);
        let cfg = QuadratureConfig::default();
        for n in 0..64 {
            for m in n..64 {
                let ip = integrate(
                    |z| {
                        let v = eval_phi_all(&s, z);
                        v[n] * v[m]
                    },
                    0.0,
                    1.0,
                    &cfg,
                )
                .unwrap();
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((ip - want).abs() <= 1e-12, "<phi_{n}, phi_{m}> = {ip}");
            }
        }
    }

    fn monomial(n: usize, x: f64) -> f64 {
        match n {
            0 => 1.0,
            1 => x,
            2 => (3.0 * x * x - 1.0) / 2.0,
            3 => (5.0 * x.powi(3) - 3.0 * x) / 2.0,
            4 => (35.0 * x.powi(4) - 30.0 * x * x + 3.0) / 8.0,
            5 => (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0,
            _ => unreachable!(),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn recurrence_matches_monomials(z in -2.0f64..2.0) {
            let s = spec(6);
            for n in 0..6 {
                let want = norm(n) * monomial(n, 2.0 * z - 1.0);
                let got = eval_phi(&s, n, z).unwrap();
                prop_assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "n={} z={}", n, z);
            }
        }

        #[test]
        fn derivative_matches_finite_difference(z in 0.05f64..0.95) {
            let s = spec(32);
            let h = 1e-6;
            for n in 0..32 {
                let fd = (eval_phi(&s, n, z + h).unwrap() - eval_phi(&s, n, z - h).unwrap()) / (2.0 * h);
                let d = eval_phi_deriv(&s, n, z).unwrap();
                prop_assert!((d - fd).abs() <= 1e-6, "n={} z={} d={} fd={}", n, z, d, fd);
            }
        }
    }
}
