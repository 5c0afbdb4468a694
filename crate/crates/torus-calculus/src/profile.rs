//! Paley–Wiener style decay of f̌ on a strip.

use meromorphic_core::ChargedMeromorphicFunction;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PwProfile {
    pub n: u32,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_grid: Vec<f64>,
    /// sup over σ and ±t of (1+|t|)^N |f̌(σ+it)|.
    pub sup_values: Vec<f64>,
    pub max_value: f64,
    pub argmax_t: f64,
    pub decay_confirmed: bool,
}

/// Samples (1+|t|)^N |F(σ+it)| for σ in [σ_min, σ_max], 0 ≤ t ≤ 40, skipping
/// points within 0.05 of a pole. Decay is confirmed when the profile is
/// non-increasing after its maximum (up to a 1e-6 relative noise floor) and
/// ends below half of it.
pub fn pw_decay_profile(f: &ChargedMeromorphicFunction, sigma_min: f64, sigma_max: f64, n: u32) -> PwProfile {
    let sigmas: Vec<f64> = if sigma_max > sigma_min {
        (0..=10).map(|k| sigma_min + (sigma_max - sigma_min) * k as f64 / 10.0).collect()
    } else {
        vec![sigma_min]
    };
    let t_grid: Vec<f64> = (0..=80).map(|j| 0.5 * j as f64).collect();
    let sup_values: Vec<f64> = t_grid
        .iter()
        .map(|&t| {
            let weight = (1.0 + t).powi(n as i32);
            let mut best: f64 = 0.0;
            for &sigma in &sigmas {
                for tt in [t, -t] {
                    let s = Complex64::new(sigma, tt);
                    if f.poles.iter().any(|p| (p.location - s).norm() < 0.05) {
                        continue;
                    }
                    best = best.max(weight * f.eval(s).norm());
                }
            }
            best
        })
        .collect();
    let (imax, max_value) =
        sup_values.iter().enumerate().fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let slack = 1e-6 * max_value;
    let monotone = sup_values[imax..].windows(2).all(|w| w[1] <= w[0] + slack);
    let last = *sup_values.last().unwrap_or(&0.0);
    let decay_confirmed = max_value == 0.0 || (monotone && last < 0.5 * max_value);
    PwProfile {
        n,
        sigma_min,
        sigma_max,
        argmax_t: t_grid[imax],
        t_grid,
        sup_values,
        max_value,
        decay_confirmed,
    }
}
