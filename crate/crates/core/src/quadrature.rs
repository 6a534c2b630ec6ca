// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Composite Gauss-Legendre quadrature on finite intervals.
//!
//! Rules are computed once per order and cached for the life of the process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};

pub const MIN_POINTS: usize = 2;
pub const MAX_POINTS: usize = 128;
pub const MAX_PANELS: usize = 1024;

/// Points per panel and number of equal panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct QuadratureConfig {
    points_per_panel: usize,
    panels: usize,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    #[serde(default = "default_points")]
    points_per_panel: usize,
    #[serde(default = "default_panels")]
    panels: usize,
}

fn default_points() -> usize {
    64
}

fn default_panels() -> usize {
    8
}

impl TryFrom<RawConfig> for QuadratureConfig {
    type Error = Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        QuadratureConfig::new(raw.points_per_panel, raw.panels)
    }
}

impl From<QuadratureConfig> for RawConfig {
    fn from(c: QuadratureConfig) -> Self {
        RawConfig {
            points_per_panel: c.points_per_panel,
            panels: c.panels,
        }
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            points_per_panel: default_points(),
            panels: default_panels(),
        }
    }
}

impl QuadratureConfig {
    pub fn new(points_per_panel: usize, panels: usize) -> Result<Self> {
        if !(MIN_POINTS..=MAX_POINTS).contains(&points_per_panel) {
            return Err(argument(format!(
                "points per panel must be in {MIN_POINTS}..={MAX_POINTS}, got {points_per_panel}"
            )));
        }
        if !(1..=MAX_PANELS).contains(&panels) {
            return Err(argument(format!(
                "panel count must be in 1..={MAX_PANELS}, got {panels}"
            )));
        }
        Ok(Self {
            points_per_panel,
            panels,
        })
    }

    pub fn points_per_panel(&self) -> usize {
        self.points_per_panel
    }

    pub fn panels(&self) -> usize {
        self.panels
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `(P_k(x), P'_k(x))`.
fn legendre_with_derivative(k: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * p - jf * p_prev) / (jf + 1.0);
        p_prev = p;
        p = next;
    }
    // interior nodes only, so 1 - x^2 never vanishes here
    let dp = k as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn compute_rule(k: usize) -> GaussRule {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let kf = k as f64;
    // roots are symmetric; solve for the positive half
    for i in 0..k.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (kf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(k, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(k, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    if k % 2 == 1 {
        nodes[k / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// The `k`-point Gauss-Legendre rule, cached per `k`.
pub fn gauss_rule(k: usize) -> Result<Arc<GaussRule>> {
    if !(MIN_POINTS..=MAX_POINTS).contains(&k) {
        return Err(argument(format!(
            "Gauss rule order must be in {MIN_POINTS}..={MAX_POINTS}, got {k}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(guard.entry(k).or_insert_with(|| Arc::new(compute_rule(k))).clone())
}

/// Nodes and weights of the composite rule over `[a, b]`.
pub fn composite_nodes(a: f64, b: f64, cfg: &QuadratureConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(argument(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    let rule = gauss_rule(cfg.points_per_panel)?;
    let p = cfg.panels;
    let width = (b - a) / p as f64;
    let half = 0.5 * width;
    let mut nodes = Vec::with_capacity(p * rule.nodes.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for j in 0..p {
        let lo = a + j as f64 * width;
        let mid = lo + half;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    Ok((nodes, weights))
}

/// Composite Gauss-Legendre estimate of `int_a^b f(x) dx`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), a, b, cfg)
}

/// Like [`integrate`] but the integrand may fail.
pub fn try_integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (nodes, weights) = composite_nodes(a, b, cfg)?;
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        let v = f(*x)?;
        if !v.is_finite() {
            return Err(Error::Evaluation {
                abscissa: *x,
                message: format!("integrand returned {v}"),
            });
        }
        sum += w * v;
    }
    Ok(sum)
}
