//! Strip bound |c(σ+it)| ≤ e^{2Tσ}(1 + 2|σ/t|) for the scattering scalar.

use num_complex::Complex64;

use crate::scattering::intertwining_c;

/// Rectangular sampling grid in (σ, |t|); both signs of t are sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcGrid {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub sigma_steps: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_step: f64,
}

impl Default for HcGrid {
    fn default() -> Self {
        Self { sigma_min: 0.0, sigma_max: 2.0, sigma_steps: 40, t_min: 0.1, t_max: 40.0, t_step: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcReport {
    /// Whether the bound held at every grid point for the tested T.
    pub holds: bool,
    pub tested_t: f64,
    /// Smallest T for which the bound holds on the grid.
    pub minimal_t: f64,
    /// Grid point attaining `minimal_t`.
    pub worst_point: Complex64,
    /// max over the grid of |c| / bound at the tested T.
    pub max_ratio: f64,
    pub samples: usize,
}

const SLACK: f64 = 1e-12;

pub fn hc_bound_check(t_bound: f64, grid: &HcGrid) -> HcReport {
    let mut minimal_t: f64 = 0.0;
    let mut worst_point = Complex64::new(grid.sigma_min, grid.t_min);
    let mut max_ratio: f64 = 0.0;
    let mut samples = 0;
    let nt = ((grid.t_max - grid.t_min) / grid.t_step).round() as usize;
    for i in 0..=grid.sigma_steps {
        let sigma = grid.sigma_min
            + (grid.sigma_max - grid.sigma_min) * i as f64 / grid.sigma_steps.max(1) as f64;
        for j in 0..=nt {
            let t_abs = grid.t_min + grid.t_step * j as f64;
            for t in [t_abs, -t_abs] {
                let s = Complex64::new(sigma, t);
                let Ok(c) = intertwining_c(s) else { continue };
                samples += 1;
                let poly = 1.0 + 2.0 * (sigma / t).abs();
                let ratio = c.norm() / ((2.0 * t_bound * sigma).exp() * poly);
                max_ratio = max_ratio.max(ratio);
                if sigma > 0.0 {
                    let needed = (c.norm() / poly).ln() / (2.0 * sigma);
                    if needed > minimal_t {
                        minimal_t = needed;
                        worst_point = s;
                    }
                }
            }
        }
    }
    HcReport {
        holds: max_ratio <= 1.0 + SLACK,
        tested_t: t_bound,
        minimal_t,
        worst_point,
        max_ratio,
        samples,
    }
}
