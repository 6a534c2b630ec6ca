// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Stationary time warps `sigma_t(s) = f(s - t)`.
//!
//! A warp maps the history `(-inf, t]` onto the canonical interval `(0, 1]`
//! with the present at `z = 1`. Each family supplies `f`, its inverse `g`
//! and both derivatives in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WarpFamily {
    /// `f(x) = exp(x / tau)`.
    #[serde(alias = "exp")]
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWarp", into = "RawWarp")]
pub struct WarpSpec {
    family: WarpFamily,
    rate: f64,
}

#[derive(Serialize, Deserialize)]
struct RawWarp {
    family: WarpFamily,
    #[serde(default = "default_rate")]
    rate: f64,
}

fn default_rate() -> f64 {
    1.0
}

impl TryFrom<RawWarp> for WarpSpec {
    type Error = crate::Error;
    fn try_from(raw: RawWarp) -> Result<Self> {
        WarpSpec::new(raw.family, raw.rate)
    }
}

impl From<WarpSpec> for RawWarp {
    fn from(w: WarpSpec) -> Self {
        RawWarp {
            family: w.family,
            rate: w.rate,
        }
    }
}

impl Default for WarpSpec {
    fn default() -> Self {
        Self {
            family: WarpFamily::Exponential,
            rate: 1.0,
        }
    }
}

impl WarpSpec {
    pub fn new(family: WarpFamily, rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(argument(format!("warp rate must be positive and finite, got {rate}")));
        }
        Ok(Self { family, rate })
    }

    /// Exponential warp with rate `tau`.
    pub fn exponential(tau: f64) -> Result<Self> {
        Self::new(WarpFamily::Exponential, tau)
    }

    pub fn family(&self) -> WarpFamily {
        self.family
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// `f(x)`, defined for every real `x`.
    pub fn f(&self, x: f64) -> f64 {
        match self.family {
            WarpFamily::Exponential => (x / self.rate).exp(),
        }
    }

    /// `g = f^-1`, defined for `z > 0`.
    pub fn g(&self, z: f64) -> f64 {
        match self.family {
            WarpFamily::Exponential => self.rate * z.ln(),
        }
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        match self.family {
            WarpFamily::Exponential => (x / self.rate).exp() / self.rate,
        }
    }

    pub fn g_prime(&self, z: f64) -> f64 {
        match self.family {
            WarpFamily::Exponential => self.rate / z,
        }
    }
}

fn check_past(t: f64, s: f64) -> Result<()> {
    if s > t || s.is_nan() || t.is_nan() {
        return Err(domain(format!("time {s} lies after the present t = {t}")));
    }
    Ok(())
}

fn check_canonical(z: f64) -> Result<()> {
    if !(z > 0.0 && z <= 1.0) {
        return Err(domain(format!("canonical coordinate {z} outside (0, 1]")));
    }
    Ok(())
}

/// `sigma_t(s) = f(s - t)` for `s <= t`.
pub fn warp_forward(w: &WarpSpec, t: f64, s: f64) -> Result<f64> {
    check_past(t, s)?;
    Ok(w.f(s - t))
}

/// `sigma_t^-1(z) = t + g(z)` for `z` in `(0, 1]`.
pub fn warp_inverse(w: &WarpSpec, t: f64, z: f64) -> Result<f64> {
    check_canonical(z)?;
    Ok(t + w.g(z))
}

/// Induced measure `omega_t(s) = |sigma_t'(s)| = f'(s - t)`.
pub fn measure(w: &WarpSpec, t: f64, s: f64) -> Result<f64> {
    check_past(t, s)?;
    Ok(w.f_prime(s - t).abs())
}

/// Backward lag `sigma_t o sigma_{t+delta}^-1 (z) = f(delta + g(z))`.
///
/// The result exceeds 1 whenever `delta > 0`.
pub fn lag(w: &WarpSpec, delta: f64, z: f64) -> Result<f64> {
    check_canonical(z)?;
    if !delta.is_finite() || delta < 0.0 {
        return Err(argument(format!(
            "lag step must be finite and nonnegative, got {delta}"
        )));
    }
    Ok(w.f(delta + w.g(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadratureConfig};
    use proptest::prelude::*;

    fn exp(tau: f64) -> WarpSpec {
        WarpSpec::exponential(tau).unwrap()
    }

    #[test]
    fn forward_values() {
        assert_eq!(warp_forward(&exp(1.0), 5.0, 5.0).unwrap(), 1.0);
        assert!((warp_forward(&exp(1.0), 5.0, 4.0).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert!((warp_forward(&exp(2.0), 0.0, -2.0).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert!(matches!(
            warp_forward(&exp(1.0), 0.0, 0.1),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn inverse_values() {
        assert_eq!(warp_inverse(&exp(1.0), 3.0, 1.0).unwrap(), 3.0);
        assert!((warp_inverse(&exp(1.0), 0.0, (-2f64).exp()).unwrap() + 2.0).abs() < 1e-15);
        assert!(warp_inverse(&exp(1.0), 0.0, 0.0).is_err());
        assert!(warp_inverse(&exp(1.0), 0.0, 1.5).is_err());
    }

    #[test]
    fn boundary_maps() {
        for tau in [0.5, 1.0, 4.0] {
            let w = exp(tau);
            assert_eq!(w.f(0.0), 1.0);
            assert_eq!(w.g(1.0), 0.0);
        }
    }

    #[test]
    fn measure_values() {
        assert_eq!(measure(&exp(1.0), 0.0, 0.0).unwrap(), 1.0);
        assert!((measure(&exp(1.0), 0.0, -1.0).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert!(measure(&exp(1.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn measure_integrates_to_one() {
        let w = exp(1.0);
        let t = 3.0;
        let cfg = QuadratureConfig::new(64, 64).unwrap();
        let total = integrate(|s| measure(&w, t, s).unwrap(), t - 40.0, t, &cfg).unwrap();
        assert!((total - 1.0).abs() <= 1e-12, "total = {total}");
    }

    #[test]
    fn lag_values() {
        let w = exp(1.0);
        assert_eq!(lag(&w, 0.0, 0.7).unwrap(), 0.7);
        assert!((lag(&w, 0.5, 0.5).unwrap() - 0.5 * 0.5f64.exp()).abs() < 1e-15);
        assert!(lag(&w, 0.1, 0.0).is_err());
        assert!(lag(&w, -0.1, 0.5).is_err());
    }

    #[test]
    fn rejects_bad_rate() {
        assert!(WarpSpec::exponential(0.0).is_err());
        assert!(WarpSpec::exponential(-1.0).is_err());
        assert!(WarpSpec::exponential(f64::NAN).is_err());
    }

    #[test]
    fn serde_shape() {
        let w: WarpSpec = serde_json::from_str(r#"{"family":"exp","rate":2.0}"#).unwrap();
        assert_eq!(w, exp(2.0));
        let w: WarpSpec = serde_json::from_str(r#"{"family":"exponential"}"#).unwrap();
        assert_eq!(w.rate(), 1.0);
        assert!(serde_json::from_str::<WarpSpec>(r#"{"family":"exp","rate":-1}"#).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(t in -50.0f64..50.0, back in 0.0f64..30.0, tau in 0.25f64..8.0) {
            let w = exp(tau);
            let s = t - back;
            let z = warp_forward(&w, t, s).unwrap();
            prop_assume!(z > 0.0);
            let s2 = warp_inverse(&w, t, z).unwrap();
            prop_assert!((s2 - s).abs() <= 1e-12 * (1.0 + t.abs()));
        }

        #[test]
        fn f_of_g_is_identity(z in 1e-6f64..=1.0, tau in 0.25f64..8.0) {
            let w = exp(tau);
            prop_assert!((w.f(w.g(z)) - z).abs() <= 1e-12);
        }

        #[test]
        fn forward_is_increasing(t in -10.0f64..10.0, a in 0.0f64..20.0, b in 0.0f64..20.0) {
            prop_assume!((a - b).abs() > 1e-9);
            let w = exp(1.0);
            let (near, far) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(warp_forward(&w, t, t - far).unwrap() < warp_forward(&w, t, t - near).unwrap());
        }

        #[test]
        fn lag_semigroup(d1 in 0.0f64..0.5, d2 in 0.0f64..0.5, z in 1e-3f64..=1.0) {
            let w = exp(1.0);
            let inner = lag(&w, d2, z).unwrap();
            // the inner result can exceed 1, so compose through f and g directly
            let composed = w.f(d1 + w.g(inner));
            let direct = lag(&w, d1 + d2, z).unwrap();
            prop_assert!((composed - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }
}
