//! Geometric side: unipotent, identity and hyperbolic contributions.
//!
//! Measures: dμ = dx dy/y² on the upper half-plane, d×a = du on A with
//! a ↦ e^u the δ^{1/2} coordinate, and dn = 2dx on N. The factor 2 is what
//! makes dn·δ^{−1}(a)d×a·dk (dk of mass 1) reproduce dμ. The Tate integral
//! uses the self-dual measure dx on the line.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use special_functions::quad::composite_nodes;
use special_functions::{zeta, EULER_GAMMA};

use crate::error::TraceError;
use crate::laurent::TwoTermLaurent;
use crate::ser::complex;
use crate::spherical::SphericalTestFunction;

pub const N_MEASURE: f64 = 2.0;

const PANEL: f64 = 0.25;
const ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricTermConfig {
    pub vol_a1: f64,
    pub vol_m1: f64,
    pub vol_h: f64,
    pub vol_gm1: f64,
    /// Eigenvalue ratios α inserted in the TF₋₁ sum.
    pub unipotent_classes: Vec<f64>,
    /// Eigenvalue ratios of split hyperbolic classes for TF₀.
    pub hyperbolic_classes: Vec<f64>,
    /// Classes with max(|α|, 1/|α|) above this are dropped.
    pub class_bound: f64,
    pub normalization: Vec<String>,
}

impl Default for GeometricTermConfig {
    fn default() -> Self {
        Self {
            vol_a1: 1.0,
            vol_m1: 1.0,
            vol_h: PI / 3.0,
            vol_gm1: 1.0,
            unipotent_classes: vec![1.0],
            hyperbolic_classes: Vec::new(),
            class_bound: 1e6,
            normalization: vec![
                "dμ = dx dy/y² on the upper half-plane; Vol of the modular surface = π/3".into(),
                "A coordinatized by δ^{1/2}: a ↦ e^u with d×a = du; Vol([A]¹) = Vol([M]¹) = 1".into(),
                "dn = 2dx on N, compatible with dμ under the Iwasawa decomposition".into(),
                "Tate integral against the self-dual dx; Vol([G_m]¹) = 1".into(),
                "TF₋₁ integrand read as Φ(k⁻¹nαk) with α inserted".into(),
            ],
        }
    }
}

impl GeometricTermConfig {
    pub fn validate(&self) -> Result<(), TraceError> {
        for (name, v) in [("vol_a1", self.vol_a1), ("vol_m1", self.vol_m1), ("vol_h", self.vol_h), ("vol_gm1", self.vol_gm1)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(TraceError::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    fn within_bound(&self, a: f64) -> bool {
        let m = a.abs().max(1.0 / a.abs());
        m <= self.class_bound
    }
}

fn breaks(end: f64) -> Vec<f64> {
    let n = (end / PANEL).ceil().max(1.0) as usize;
    (0..=n).map(|j| end * j as f64 / n as f64).collect()
}

/// ∫_ℝ k(A x² + B) w(x) dx for A > 0, B ≥ 0 and even w.
pub(crate) fn quadratic_kernel_integral(t: &SphericalTestFunction, a: f64, b: f64, weight: impl Fn(f64) -> f64) -> Complex64 {
    let smax = t.u_max.sinh();
    let mut acc = Complex64::new(0.0, 0.0);
    if b > 0.0 {
        let rb = b.sqrt();
        if rb >= smax {
            return acc;
        }
        let scale = (b / a).sqrt();
        let eta_max = (smax / rb).acosh();
        for (eta, w) in composite_nodes(&breaks(eta_max), ORDER) {
            let sigma = (rb * eta.cosh()).asinh();
            acc += t.k_half_distance(sigma) * (weight(scale * eta.sinh()) * eta.cosh() * w);
        }
        acc * (2.0 * scale)
    } else {
        let scale = 1.0 / a.sqrt();
        for (eta, w) in composite_nodes(&breaks(t.u_max), ORDER) {
            acc += t.k_half_distance(eta) * (weight(scale * eta.sinh()) * eta.cosh() * w);
        }
        acc * (2.0 * scale)
    }
}

/// v(n_t) = −log Δ(w n_t) = ½ log(1 + t²).
pub fn weight_v(t: f64) -> f64 {
    0.5 * t.mul_add(t, 1.0).ln()
}

/// Eigenvalue ratio of a real 2×2 matrix [[p, q], [r, s]], normalized to
/// |ratio| ≥ 1.
pub fn hyperbolic_ratio(m: [f64; 4]) -> Result<f64, TraceError> {
    let [p, q, r, s] = m;
    let tr = p + s;
    let det = p * s - q * r;
    let disc = tr * tr - 4.0 * det;
    if det == 0.0 || !(disc > 0.0) {
        return Err(TraceError::EllipticInput { discriminant: disc });
    }
    let root = disc.sqrt();
    let (l1, l2) = (0.5 * (tr + root), 0.5 * (tr - root));
    let ratio = if l1.abs() >= l2.abs() { l1 / l2 } else { l2 / l1 };
    Ok(ratio)
}

fn check_regular(alpha: f64) -> Result<(), TraceError> {
    if !alpha.is_finite() || alpha == 0.0 || alpha == 1.0 {
        let disc = if alpha.is_finite() { (alpha - 1.0).powi(2) } else { f64::NAN };
        return Err(TraceError::EllipticInput { discriminant: disc });
    }
    Ok(())
}

/// Coefficients with u(i, n_t⁻¹αn_t·i) = A t² + B for α = diag(a, 1);
/// a < 0 acts by z ↦ a z̄.
fn conjugated_quadratic(a: f64) -> (f64, f64) {
    let m = 4.0 * a.abs();
    let coeff = (1.0 - a).powi(2) / m;
    let constant = if a > 0.0 { coeff } else { (1.0 + a).powi(2) / m };
    (coeff, constant)
}

fn orbital(t: &SphericalTestFunction, alpha: f64, weighted: bool) -> Result<Complex64, TraceError> {
    check_regular(alpha)?;
    let (a2, b) = conjugated_quadratic(alpha);
    let value = if weighted {
        quadratic_kernel_integral(t, a2, b, weight_v)
    } else {
        quadratic_kernel_integral(t, a2, b, |_| 1.0)
    };
    let factor = if alpha == -1.0 { 0.5 } else { 1.0 };
    Ok(value * (N_MEASURE * factor))
}

/// ∫_{M\H} Φ(g⁻¹αg) v(g) dg for α = diag(a, 1), computed over N × K.
pub fn weighted_orbital_integral(t: &SphericalTestFunction, alpha: f64) -> Result<Complex64, TraceError> {
    orbital(t, alpha, true)
}

/// The same integral without the weight.
pub fn orbital_integral(t: &SphericalTestFunction, alpha: f64) -> Result<Complex64, TraceError> {
    orbital(t, alpha, false)
}

/// Vol([H])·Φ(1).
pub fn identity_term(t: &SphericalTestFunction, config: &GeometricTermConfig) -> Complex64 {
    t.k0() * config.vol_h
}

fn profile_extent(profile: &dyn Fn(f64) -> Complex64) -> f64 {
    let grid: Vec<f64> = (0..=240).map(|j| (-20.0 + 0.25 * j as f64).exp()).collect();
    let mags: Vec<f64> = grid.iter().map(|&x| (profile(x) + profile(-x)).norm()).collect();
    let max = mags.iter().cloned().fold(0.0, f64::max);
    match mags.iter().rposition(|&m| m > 1e-18 * max) {
        Some(i) => grid[(i + 2).min(grid.len() - 1)],
        None => 0.0,
    }
}

/// Z_∞(F, w) = ∫_ℝ F(x)|x|^{w−1} dx, and with `log` the derivative in w.
fn local_zeta(profile: &dyn Fn(f64) -> Complex64, w: Complex64, log: bool) -> Result<Complex64, TraceError> {
    if !(w.re > 0.2) {
        return Err(TraceError::Domain(format!("local zeta integral needs Re w > 0.2, got {w}")));
    }
    let x_max = profile_extent(profile);
    if x_max == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let hi = x_max.ln();
    let lo = -60.0 / w.re.min(1.0);
    let mut b: Vec<f64> = (0..=((hi - lo) / PANEL).ceil() as usize).map(|j| lo + PANEL * j as f64).collect();
    *b.last_mut().expect("non-empty") = hi;
    b.dedup();
    let mut acc = Complex64::new(0.0, 0.0);
    for (y, wt) in composite_nodes(&b, ORDER) {
        let x = y.exp();
        let f = profile(x) + profile(-x);
        let mut term = f * (w * y).exp();
        if log {
            term *= y;
        }
        acc += term * wt;
    }
    Ok(acc)
}

/// Z(F, w) = Z_∞(F_∞, w)·ζ(w) for F = F_∞ ⊗ (lattice indicator).
pub fn tate_zeta(profile: &dyn Fn(f64) -> Complex64, w: Complex64) -> Result<Complex64, TraceError> {
    Ok(local_zeta(profile, w, false)? * zeta(w)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct TateZetaTerm {
    pub laurent: TwoTermLaurent,
    /// F̂_∞(0) = ∫ F_∞ dx
    #[serde(with = "complex")]
    pub fourier_at_zero: Complex64,
    /// |a₋₁ + 2·Vol([G_m]¹)·F̂(0)|
    pub residue_defect: f64,
}

/// Vol([G_m]¹)·Z(F, 1 − s/2) = a₋₁/s + a₀ + O(s).
pub fn tate_zeta_term(profile: &dyn Fn(f64) -> Complex64, vol_gm1: f64) -> Result<TateZetaTerm, TraceError> {
    let one = Complex64::new(1.0, 0.0);
    let z0 = local_zeta(profile, one, false)?;
    let z1 = local_zeta(profile, one, true)?;
    let laurent = TwoTermLaurent { a_minus1: -2.0 * z0 * vol_gm1, a0: (z1 + EULER_GAMMA * z0) * vol_gm1 };
    let fourier_at_zero = z0;
    let residue_defect = (laurent.a_minus1 + 2.0 * vol_gm1 * fourier_at_zero).norm();
    Ok(TateZetaTerm { laurent, fourier_at_zero, residue_defect })
}

/// F_Φ(x) = ∫_K Φ(k⁻¹n(x)k) dk = k(x²/4).
pub fn unipotent_profile(t: &SphericalTestFunction) -> impl Fn(f64) -> Complex64 + '_ {
    move |x: f64| t.k_half_distance((0.5 * x).asinh())
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassTerm {
    pub alpha: f64,
    #[serde(with = "complex")]
    pub value: Complex64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometricMinus1 {
    #[serde(with = "complex")]
    pub value: Complex64,
    pub classes: Vec<ClassTerm>,
    pub alpha_inserted: bool,
}

/// −Vol([A]¹) Σ_α ∫_N ∫_K Φ(k⁻¹nαk) dk dn for Φ = Φ₁^∨ ⋆ Φ₂.
pub fn tf_minus1_geometric(
    t1: &SphericalTestFunction,
    t2: &SphericalTestFunction,
    config: &GeometricTermConfig,
) -> Result<GeometricMinus1, TraceError> {
    config.validate()?;
    let phi = t1.convolution(t2)?;
    tf_minus1_geometric_of(&phi, config)
}

/// The same sum for an already convolved test function.
pub fn tf_minus1_geometric_of(phi: &SphericalTestFunction, config: &GeometricTermConfig) -> Result<GeometricMinus1, TraceError> {
    let mut classes = Vec::new();
    for &alpha in &config.unipotent_classes {
        if !alpha.is_finite() || alpha == 0.0 {
            return Err(TraceError::Domain(format!("class ratio must be a non-zero real, got {alpha}")));
        }
        if !config.within_bound(alpha) {
            continue;
        }
        // n(x)α·i = x + |α|i
        let m = 4.0 * alpha.abs();
        let integral = quadratic_kernel_integral(phi, 1.0 / m, (alpha.abs() - 1.0).powi(2) / m, |_| 1.0);
        classes.push(ClassTerm { alpha, value: -config.vol_a1 * N_MEASURE * integral });
    }
    let value = classes.iter().map(|c| c.value).sum();
    Ok(GeometricMinus1 { value, classes, alpha_inserted: true })
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometricSide {
    #[serde(with = "complex")]
    pub identity_term: Complex64,
    pub unipotent: TateZetaTerm,
    pub hyperbolic: Vec<ClassTerm>,
    /// identity + unipotent a₀ + weighted hyperbolic terms
    #[serde(with = "complex")]
    pub total: Complex64,
}

/// The computable TF₀ terms for Φ = Φ₁^∨ ⋆ Φ₂.
pub fn geometric_side_of(phi: &SphericalTestFunction, config: &GeometricTermConfig) -> Result<GeometricSide, TraceError> {
    config.validate()?;
    let identity_term = identity_term(phi, config);
    let profile = unipotent_profile(phi);
    let unipotent = tate_zeta_term(&profile, config.vol_gm1)?;
    let mut hyperbolic = Vec::new();
    for &alpha in &config.hyperbolic_classes {
        if config.within_bound(alpha) {
            let value = weighted_orbital_integral(phi, alpha)? * config.vol_m1;
            hyperbolic.push(ClassTerm { alpha, value });
        }
    }
    let total = identity_term + unipotent.laurent.a0 + hyperbolic.iter().map(|c| c.value).sum::<Complex64>();
    Ok(GeometricSide { identity_term, unipotent, hyperbolic, total })
}
