//! Two-term Laurent germs recovered by truncation.
//!
//! For a pairing whose regularized value is a₋₁/s + a₀ + O(s), the
//! truncated integral over the complement of the cusp neighbourhood of
//! depth T behaves like −a₋₁T + a₀ up to rapidly decaying terms.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use special_functions::quad::composite_nodes;

use crate::error::TraceError;
use crate::geometric::quadratic_kernel_integral;
use crate::ser::complex;
use crate::spherical::SphericalTestFunction;
use crate::table::ChebTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoTermLaurent {
    #[serde(with = "complex")]
    pub a_minus1: Complex64,
    #[serde(with = "complex")]
    pub a0: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitConfig {
    pub t_grid: Vec<f64>,
    /// Least squares uses this many trailing grid points.
    pub fit_points: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { t_grid: (0..=8).map(|j| 2.0 + 0.5 * j as f64).collect(), fit_points: 4 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncationFit {
    pub t_grid: Vec<f64>,
    pub values: Vec<[f64; 2]>,
    pub laurent: TwoTermLaurent,
    /// |I(T) − (−a₋₁T + a₀)| on the whole grid.
    pub residuals: Vec<f64>,
    /// Asymptote pairing computed directly, the expected −a₋₁.
    #[serde(with = "complex")]
    pub asymptote_pairing: Complex64,
    pub asymptote_defect: f64,
}

fn fit(t_grid: &[f64], values: &[Complex64], fit_points: usize, asymptote: Complex64) -> Result<TruncationFit, TraceError> {
    let n = t_grid.len();
    if fit_points < 2 || fit_points > n {
        return Err(TraceError::Domain(format!("need 2 ≤ fit_points ≤ {n}, got {fit_points}")));
    }
    let (ts, vs) = (&t_grid[n - fit_points..], &values[n - fit_points..]);
    let m = fit_points as f64;
    let tbar = ts.iter().sum::<f64>() / m;
    let vbar = vs.iter().sum::<Complex64>() / m;
    let stt: f64 = ts.iter().map(|t| (t - tbar).powi(2)).sum();
    let stv: Complex64 = ts.iter().zip(vs).map(|(t, v)| (v - vbar) * (t - tbar)).sum();
    let slope = stv / stt;
    let intercept = vbar - slope * tbar;
    let residuals: Vec<f64> = t_grid.iter().zip(values).map(|(&t, v)| (v - (slope * t + intercept)).norm()).collect();
    let noise = 1e-9 * (1.0 + values.iter().fold(0.0f64, |a, v| a.max(v.norm())));
    let decays = residuals.windows(2).all(|w| w[1] <= w[0] + noise);
    let settled = residuals[n - fit_points..].iter().all(|&r| r <= 10.0 * noise);
    if !(decays && settled) {
        return Err(TraceError::Fit { residuals });
    }
    let laurent = TwoTermLaurent { a_minus1: -slope, a0: intercept };
    Ok(TruncationFit {
        t_grid: t_grid.to_vec(),
        values: values.iter().map(|v| [v.re, v.im]).collect(),
        laurent,
        residuals,
        asymptote_pairing: asymptote,
        asymptote_defect: (laurent.a_minus1 + asymptote).norm(),
    })
}

/// Model case on ℝ×₊ with Δ = x: I(T) = ∫_{x ≤ e^T} F(x)φ(x) d×x. Both
/// functions must vanish rapidly as x → 0; jumps are allowed at integers
/// of log x.
pub fn two_term_laurent_model(
    f: impl Fn(f64) -> Complex64,
    phi: impl Fn(f64) -> Complex64,
    config: &FitConfig,
) -> Result<TruncationFit, TraceError> {
    const LOWER: f64 = -40.0;
    let integrand = |u: f64| {
        let x = u.exp();
        f(x) * phi(x)
    };
    let mut values = Vec::with_capacity(config.t_grid.len());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut from = LOWER;
    for &t in &config.t_grid {
        if t < from {
            return Err(TraceError::Domain("T grid must be increasing and above −40".into()));
        }
        let mut b: Vec<f64> = vec![from];
        let mut x = (from * 4.0).floor() / 4.0 + 0.25;
        while x < t {
            b.push(x);
            x += 0.25;
        }
        b.push(t);
        for (u, w) in composite_nodes(&b, 16) {
            acc += integrand(u) * w;
        }
        values.push(acc);
        from = t;
    }
    let far = (config.t_grid.last().copied().unwrap_or(0.0) + 20.0).exp();
    let asymptote = f(far) * phi(far);
    fit(&config.t_grid, &values, config.fit_points, asymptote)
}

/// G(σ) = ∫_0^σ k̃(τ) cosh τ dτ, i.e. ∫_0^{sinh σ} k(v²) dv.
fn cumulative_kernel(phi: &SphericalTestFunction) -> ChebTable {
    let end = phi.u_max;
    let panels = (end / 0.25).ceil().max(1.0) as usize;
    ChebTable::from_fn(end, panels, 16, |sigma| {
        if sigma == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let n = (sigma / 0.25).ceil() as usize;
        let b: Vec<f64> = (0..=n).map(|j| sigma * j as f64 / n as f64).collect();
        composite_nodes(&b, 20).into_iter().map(|(t, w)| phi.k_half_distance(t) * (t.cosh() * w)).sum()
    })
}

/// Terms summed directly before switching to Euler–Maclaurin.
const DIRECT_TERMS: usize = 1 << 18;

fn chunked_sum(lo: usize, hi: usize, f: impl Fn(usize) -> Complex64 + Sync) -> Complex64 {
    const CHUNK: usize = 1 << 14;
    let starts: Vec<usize> = (lo..=hi).step_by(CHUNK).collect();
    let partial: Vec<Complex64> = starts
        .par_iter()
        .map(|&s| (s..=(s + CHUNK - 1).min(hi)).map(&f).sum())
        .collect();
    partial.into_iter().sum()
}

/// Truncated integral of the diagonal of the kernel of Φ = Φ₁^∨ ⋆ Φ₂ over
/// the part of the fundamental domain with Y₀ < y < e^{2T}, Y₀ = e^{2T₀}
/// for T₀ the first grid point. Only the parabolic terms Σ_n k(n²/4y²)
/// enter; the remaining orbit terms are negligible at the fitted heights.
pub fn two_term_laurent_kernel(
    t1: &SphericalTestFunction,
    t2: &SphericalTestFunction,
    config: &FitConfig,
) -> Result<TruncationFit, TraceError> {
    let phi = t1.convolution(t2)?;
    two_term_laurent_kernel_of(&phi, config)
}

pub fn two_term_laurent_kernel_of(phi: &SphericalTestFunction, config: &FitConfig) -> Result<TruncationFit, TraceError> {
    let Some(&t0) = config.t_grid.first() else {
        return Err(TraceError::Domain("empty T grid".into()));
    };
    if config.t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(TraceError::Domain("T grid must be increasing".into()));
    }
    let gtab = cumulative_kernel(phi);
    let g_inf = gtab.eval(phi.u_max);
    let smax = phi.u_max.sinh();
    let big_g = |v: f64| if v >= smax { g_inf } else { gtab.eval(v.asinh()) };
    let k0 = phi.k0();
    let y0 = (2.0 * t0).exp();
    let alpha = 0.5 / y0;
    let n_direct = ((smax / alpha).ceil() as usize).min(DIRECT_TERMS);
    let values: Vec<Complex64> = config
        .t_grid
        .iter()
        .map(|&t| {
            let y = (2.0 * t).exp();
            let beta = 0.5 / y;
            let f = |x: f64| (big_g(x * alpha) - big_g(x * beta)) / x;
            let direct = chunked_sum(1, n_direct, |n| f(n as f64));
            // Euler–Maclaurin tail over n > N; G is constant past smax.
            let nf = n_direct as f64;
            let (lo, hi) = (nf * beta, (nf * alpha).min(smax));
            let integral = if lo < hi {
                let (a, b) = (lo.ln(), hi.ln());
                let m = ((b - a) / 0.25).ceil().max(1.0) as usize;
                let br: Vec<f64> = (0..=m).map(|j| a + (b - a) * j as f64 / m as f64).collect();
                composite_nodes(&br, 16).into_iter().map(|(u, w)| (g_inf - big_g(u.exp())) * w).sum()
            } else {
                Complex64::new(0.0, 0.0)
            };
            let dg = |v: f64| if v >= smax { Complex64::new(0.0, 0.0) } else { phi.k_point_pair(v * v) };
            let f_n = f(nf);
            let df_n = (dg(nf * alpha) * alpha - dg(nf * beta) * beta - f_n) / nf;
            let tail = integral - f_n * 0.5 - df_n / 12.0;
            k0 * (1.0 / y0 - 1.0 / y) + (direct + tail) * 4.0
        })
        .collect();
    let asymptote = quadratic_kernel_integral(phi, 0.25, 0.0, |_| 1.0) * 2.0;
    fit(&config.t_grid, &values, config.fit_points, asymptote)
}
