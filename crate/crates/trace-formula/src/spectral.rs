//! Spectral side: TF₋₁ and the computable TF₀ terms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use special_functions::quad::composite_nodes;
use special_functions::{c_log_derivative, intertwining_c, C_RESIDUE_AT_ONE};

use crate::error::TraceError;
use crate::ser::complex;
use crate::spherical::SphericalTestFunction;

const PANEL: f64 = 0.25;
const ORDER: usize = 20;

fn line_extent(t1: &SphericalTestFunction, t2: &SphericalTestFunction) -> f64 {
    t1.t_max.min(t2.t_max)
}

fn symmetric_breaks(l: f64) -> Vec<f64> {
    let n = (2.0 * l / PANEL).ceil().max(2.0) as usize;
    (0..=n).map(|j| -l + 2.0 * l * j as f64 / n as f64).collect()
}

/// −(1/2πi) ∫_{(σ)} h₁(s)h₂(−s) ds.
pub fn tf_minus1_spectral_on(t1: &SphericalTestFunction, t2: &SphericalTestFunction, sigma: f64) -> Result<Complex64, TraceError> {
    if t1.is_zero() || t2.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let l = line_extent(t1, t2) + sigma.abs();
    let f = |t: f64| {
        let s = Complex64::new(sigma, t);
        t1.h(s) * t2.h(-s)
    };
    let peak = f(0.0).norm().max(f(0.5).norm());
    let edge = f(l).norm().max(f(-l).norm());
    if !(edge <= 1e-12 * peak.max(f64::MIN_POSITIVE)) && edge > 0.0 {
        return Err(TraceError::Decay { what: "h1(s)h2(−s)", detail: format!("{edge:e} at |t| = {l}") });
    }
    let acc: Complex64 = composite_nodes(&symmetric_breaks(l), ORDER).into_iter().map(|(t, w)| f(t) * w).sum();
    Ok(-acc / (2.0 * PI))
}

/// TF₋₁ = −(1/2π) ∫ h₁(it)h₂(it) dt.
pub fn tf_minus1_spectral(t1: &SphericalTestFunction, t2: &SphericalTestFunction) -> Result<Complex64, TraceError> {
    tf_minus1_spectral_on(t1, t2, 0.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualTerm {
    /// h₁(1)h₂(1): the trace of Φ on the constants.
    #[serde(with = "complex")]
    pub value: Complex64,
    /// res_{s=1} c · h₁(1)h₂(1)
    #[serde(with = "complex")]
    pub residue_scaled: Complex64,
    /// (3/π)·h₁(1)h₂(1)
    #[serde(with = "complex")]
    pub projection_scaled: Complex64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralSide {
    #[serde(with = "complex")]
    pub m0_term: Complex64,
    pub residual: Option<ResidualTerm>,
    #[serde(with = "complex")]
    pub continuous_term: Complex64,
    /// m0 + residual + continuous; cuspidal terms are not included.
    #[serde(with = "complex")]
    pub total: Complex64,
}

/// −(1/4π) ∫ L(it) h₁(it)h₂(it) dt for a supplied logarithmic derivative.
pub fn continuous_term_with(
    t1: &SphericalTestFunction,
    t2: &SphericalTestFunction,
    log_derivative: impl Fn(Complex64) -> Result<Complex64, TraceError> + Sync,
) -> Result<Complex64, TraceError> {
    if t1.is_zero() || t2.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let l = line_extent(t1, t2);
    let nodes = composite_nodes(&symmetric_breaks(l), ORDER);
    let parts: Result<Vec<Complex64>, TraceError> = nodes
        .par_iter()
        .map(|&(t, w)| {
            let s = Complex64::new(0.0, t);
            Ok(log_derivative(s)? * t1.h(s) * t2.h(s) * w)
        })
        .collect();
    Ok(-parts?.into_iter().sum::<Complex64>() / (4.0 * PI))
}

pub fn spectral_side(t1: &SphericalTestFunction, t2: &SphericalTestFunction, residual_on: bool) -> Result<SpectralSide, TraceError> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let c0 = intertwining_c(zero)?;
    let m0_term = 0.25 * c0 * t1.h(zero) * t2.h(zero);
    let residual = residual_on.then(|| {
        let value = t1.h(one) * t2.h(one);
        ResidualTerm { value, residue_scaled: value * C_RESIDUE_AT_ONE, projection_scaled: value * (3.0 / PI) }
    });
    let continuous_term = continuous_term_with(t1, t2, |s| Ok(c_log_derivative(s)?))?;
    let total = m0_term + residual.as_ref().map_or(zero, |r| r.value) + continuous_term;
    Ok(SpectralSide { m0_term, residual, continuous_term, total })
}

/// Σ_j h₁(2ir_j)h₂(2ir_j) over external Maass spectral parameters r_j
/// (eigenvalue ¼ + r_j²). Display only.
pub fn cuspidal_display(t1: &SphericalTestFunction, t2: &SphericalTestFunction, spectral_parameters: &[f64]) -> Complex64 {
    spectral_parameters
        .iter()
        .map(|&r| {
            let s = Complex64::new(0.0, 2.0 * r);
            t1.h(s) * t2.h(s)
        })
        .sum()
}
