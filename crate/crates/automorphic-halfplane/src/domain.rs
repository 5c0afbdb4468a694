//! Quadrature over the fundamental domain F = {|z| ≥ 1, |x| ≤ ½} against
//! dμ = dx dy/y².
//!
//! F is split at y = 1. Above, a tensor Gauss–Legendre grid in
//! (x, v = log y) runs up to `y_max`, with panel breaks at the requested
//! heights. Below, rows sit at y = cos θ, 0 ≤ θ ≤ π/6, each covering
//! sin θ ≤ |x| ≤ ½, which keeps every row smooth up to the corner.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use special_functions::quad::composite_nodes;

use crate::error::AutomorphicError;
use crate::point::HalfPlanePoint;

/// Relative size at y_max below which an integrand counts as decayed.
const DECAY_CERTIFICATE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    pub x_nodes: usize,
    pub y_nodes: usize,
    pub arc_rows: usize,
    /// Nodes per arc row, split evenly between the two sides.
    pub arc_x_nodes: usize,
    /// Gauss–Legendre order of every panel.
    pub order: usize,
    pub y_max: f64,
    /// Heights where the integrand may jump.
    pub y_breaks: Vec<f64>,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self { x_nodes: 200, y_nodes: 200, arc_rows: 40, arc_x_nodes: 200, order: 20, y_max: 40.0, y_breaks: Vec::new() }
    }
}

impl FdConfig {
    pub fn with_y_max(mut self, y_max: f64) -> Self {
        self.y_max = y_max;
        self
    }

    pub fn with_break(mut self, y: f64) -> Self {
        self.y_breaks.push(y);
        self
    }
}

/// Nodes at one height; weights include the measure.
#[derive(Debug, Clone, PartialEq)]
pub struct FdRow {
    pub y: f64,
    pub nodes: Vec<(f64, f64)>,
}

/// Values of an integrand on every node, row by row.
pub type Tabulation = Vec<Vec<Complex64>>;

#[derive(Debug, Clone, PartialEq)]
pub struct FdGrid {
    pub rows: Vec<FdRow>,
    pub y_max: f64,
}

fn panels(n: usize, order: usize) -> usize {
    n.div_ceil(order).max(1)
}

fn uniform_breaks(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..=k).map(|j| a + (b - a) * j as f64 / k as f64).collect()
}

impl FdGrid {
    pub fn new(cfg: &FdConfig) -> Self {
        assert!(cfg.y_max > 1.0, "y_max must exceed 1");
        let mut rows = Vec::new();
        // arc region
        let side = panels(cfg.arc_x_nodes / 2, cfg.order);
        let arc_theta = composite_nodes(&uniform_breaks(0.0, PI / 6.0, panels(cfg.arc_rows, cfg.order)), cfg.order);
        for (theta, wt) in arc_theta {
            let (y, s) = (theta.cos(), theta.sin());
            let scale = wt * s / (y * y);
            let right = composite_nodes(&uniform_breaks(s, 0.5, side), cfg.order);
            let mut nodes: Vec<(f64, f64)> = right.iter().rev().map(|&(x, w)| (-x, w * scale)).collect();
            nodes.extend(right.iter().map(|&(x, w)| (x, w * scale)));
            rows.push(FdRow { y, nodes });
        }
        // rectangle in v = log y
        let vmax = cfg.y_max.ln();
        let mut cuts: Vec<f64> = cfg
            .y_breaks
            .iter()
            .filter(|&&b| b > 1.0 && b < cfg.y_max)
            .map(|b| b.ln())
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut edges = vec![0.0];
        edges.extend(cuts);
        edges.push(vmax);
        let total = panels(cfg.y_nodes, cfg.order).max(edges.len() - 1);
        let mut breaks = vec![0.0];
        for w in edges.windows(2) {
            let k = ((total as f64 * (w[1] - w[0]) / vmax).round() as usize).max(1);
            breaks.extend(uniform_breaks(w[0], w[1], k).into_iter().skip(1));
        }
        let xs = composite_nodes(&uniform_breaks(-0.5, 0.5, panels(cfg.x_nodes, cfg.order)), cfg.order);
        for (v, wv) in composite_nodes(&breaks, cfg.order) {
            let y = v.exp();
            let scale = wv / y;
            rows.push(FdRow { y, nodes: xs.iter().map(|&(x, w)| (x, w * scale)).collect() });
        }
        Self { rows, y_max: cfg.y_max }
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.nodes.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tabulate(&self, f: impl Fn(HalfPlanePoint) -> Complex64 + Sync) -> Tabulation {
        self.rows
            .par_iter()
            .map(|r| r.nodes.iter().map(|&(x, _)| f(HalfPlanePoint { x, y: r.y })).collect())
            .collect()
    }

    /// Tabulates with one call per row, for integrands with per-height setup.
    pub fn tabulate_rows(&self, f: impl Fn(&FdRow) -> Vec<Complex64> + Sync) -> Tabulation {
        self.rows.par_iter().map(&f).collect()
    }

    pub fn integrate(&self, values: &Tabulation) -> Complex64 {
        self.rows
            .iter()
            .zip(values)
            .map(|(r, vals)| r.nodes.iter().zip(vals).map(|(&(_, w), v)| v * w).sum::<Complex64>())
            .sum()
    }

    /// ∫_F a·b dμ for two tabulations on this grid.
    pub fn integrate_product(&self, a: &Tabulation, b: &Tabulation) -> Complex64 {
        self.rows
            .iter()
            .zip(a.iter().zip(b))
            .map(|(r, (va, vb))| r.nodes.iter().zip(va.iter().zip(vb)).map(|(&(_, w), (p, q))| p * q * w).sum::<Complex64>())
            .sum()
    }
}

/// sup |f| on 33 points of the horocycle at `y`.
pub fn horocycle_sup(f: &(impl Fn(HalfPlanePoint) -> Complex64 + Sync), y: f64) -> f64 {
    (0..=32).map(|k| f(HalfPlanePoint { x: -0.5 + k as f64 / 32.0, y }).norm()).fold(0.0, f64::max)
}

/// ∫_F f dμ up to `cfg.y_max`, plus `tail` for the region above. Without
/// a tail the integrand must be negligible at y_max.
pub fn fd_integrate(
    integrand: impl Fn(HalfPlanePoint) -> Complex64 + Sync,
    cfg: &FdConfig,
    tail: Option<Complex64>,
) -> Result<Complex64, AutomorphicError> {
    let grid = FdGrid::new(cfg);
    let values = grid.tabulate(&integrand);
    let body = grid.integrate(&values);
    match tail {
        Some(t) => Ok(body + t),
        None => {
            let peak = values.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
            let sup = horocycle_sup(&integrand, cfg.y_max);
            if sup <= DECAY_CERTIFICATE * peak.max(1.0) {
                Ok(body)
            } else {
                Err(AutomorphicError::TailMissing { y_max: cfg.y_max, sup })
            }
        }
    }
}

/// Volume tail ∫_{Y}^∞ dy/y² of the constant function.
pub fn constant_tail(y_max: f64) -> Complex64 {
    Complex64::new(1.0 / y_max, 0.0)
}
