//! Piecewise Chebyshev interpolation on uniform panels.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

/// Values at Chebyshev–Lobatto nodes on each panel of [0, end].
/// Outside the range the table reads as zero.
#[derive(Debug, Clone)]
pub struct ChebTable {
    pub end: f64,
    width: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<Vec<Complex64>>,
}

impl ChebTable {
    /// Node positions on [−1, 1], descending from 1.
    fn reference(order: usize) -> (Vec<f64>, Vec<f64>) {
        let m = order - 1;
        let nodes = (0..order).map(|j| (PI * j as f64 / m as f64).cos()).collect();
        let weights = (0..order)
            .map(|j| {
                let w = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == m {
                    0.5 * w
                } else {
                    w
                }
            })
            .collect();
        (nodes, weights)
    }

    /// Tabulates f on `panels` equal panels of [0, end].
    pub fn from_fn(end: f64, panels: usize, order: usize, f: impl Fn(f64) -> Complex64 + Sync) -> Self {
        let (nodes, weights) = Self::reference(order);
        let width = end / panels as f64;
        let values = (0..panels)
            .into_par_iter()
            .map(|p| nodes.iter().map(|&x| f(Self::map(p, width, x))).collect())
            .collect();
        Self { end, width, nodes, weights, values }
    }

    pub fn zero(end: f64) -> Self {
        Self::from_fn(end, 1, 2, |_| Complex64::new(0.0, 0.0))
    }

    fn map(panel: usize, width: f64, x: f64) -> f64 {
        width * (panel as f64 + 0.5 * (x + 1.0))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if !(0.0..=self.end).contains(&x) {
            return Complex64::new(0.0, 0.0);
        }
        let p = ((x / self.width) as usize).min(self.values.len() - 1);
        let xi = 2.0 * (x / self.width - p as f64) - 1.0;
        let vals = &self.values[p];
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for ((&xj, &wj), &vj) in self.nodes.iter().zip(&self.weights).zip(vals) {
            let d = xi - xj;
            if d == 0.0 {
                return vj;
            }
            let c = wj / d;
            num += vj * c;
            den += c;
        }
        num / den
    }

    /// Table of the derivative, by the barycentric differentiation matrix.
    pub fn derivative(&self) -> Self {
        let n = self.nodes.len();
        let scale = 2.0 / self.width;
        let values = self
            .values
            .iter()
            .map(|vals| {
                (0..n)
                    .map(|i| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for j in 0..n {
                            if i != j {
                                let dij = self.weights[j] / self.weights[i] / (self.nodes[i] - self.nodes[j]);
                                acc += (vals[j] - vals[i]) * dij;
                            }
                        }
                        acc * scale
                    })
                    .collect()
            })
            .collect();
        Self { values, ..self.clone() }
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, v| m.max(v.norm()))
    }
}
