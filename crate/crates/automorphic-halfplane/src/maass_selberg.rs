//! The Maass–Selberg relation for truncated Eisenstein series.

use num_complex::Complex64;
use serde::Serialize;

use crate::domain::{horocycle_sup, FdConfig, FdGrid};
use crate::eisenstein::EisensteinSeries;
use crate::error::AutomorphicError;
use crate::point::HalfPlanePoint;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaassSelbergReport {
    pub s1: [f64; 2],
    pub s2: [f64; 2],
    pub t: f64,
    /// ∫_F ∧ᵀE(s₁)∧ᵀE(s₂) against ½dμ
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub deviation: f64,
    /// the same integral against dμ
    pub lhs_full_measure: [f64; 2],
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn check_parameters(s1: Complex64, s2: Complex64) -> Result<(), AutomorphicError> {
    if (s1 + s2).norm() < 1e-10 || (s1 - s2).norm() < 1e-10 {
        return Err(AutomorphicError::DegenerateParameter { s1, s2 });
    }
    Ok(())
}

/// e^{T(s₁+s₂)}/(s₁+s₂) + c(s₁)e^{T(s₂−s₁)}/(s₂−s₁)
/// + c(s₂)e^{T(s₁−s₂)}/(s₁−s₂) + c(s₁)c(s₂)e^{−T(s₁+s₂)}/(−s₁−s₂)
pub fn maass_selberg_rhs(s1: Complex64, s2: Complex64, t: f64) -> Result<Complex64, AutomorphicError> {
    check_parameters(s1, s2)?;
    let c1 = EisensteinSeries::new(s1)?.scattering();
    let c2 = EisensteinSeries::new(s2)?.scattering();
    let term = |a: Complex64| (a * t).exp() / a;
    Ok(term(s1 + s2) + c1 * term(s2 - s1) + c2 * term(s1 - s2) + c1 * c2 * term(-s1 - s2))
}

/// Grid for truncation parameter T: y_max = e^{2T} + 10 with a break at e^{2T}.
pub fn truncation_grid(t: f64, base: &FdConfig) -> FdConfig {
    let h = (2.0 * t).exp();
    let mut cfg = base.clone().with_y_max(h + 10.0);
    cfg.y_breaks = vec![h];
    cfg
}

/// ∫_F ∧ᵀE(s₁)·∧ᵀE(s₂) dμ on the grid.
pub fn truncated_product_integral(
    s1: Complex64,
    s2: Complex64,
    t: f64,
    cfg: &FdConfig,
) -> Result<Complex64, AutomorphicError> {
    let e1 = EisensteinSeries::new(s1)?;
    let e2 = EisensteinSeries::new(s2)?;
    let h = (2.0 * t).exp();
    let grid = FdGrid::new(cfg);
    let values = grid.tabulate_rows(|row| {
        let r1 = e1.row(row.y);
        let r2 = e2.row(row.y);
        let cut = row.y > h;
        row.nodes
            .iter()
            .map(|&(x, _)| {
                if cut {
                    r1.oscillating(x) * r2.oscillating(x)
                } else {
                    r1.eval(x) * r2.eval(x)
                }
            })
            .collect()
    });
    let top = |z: HalfPlanePoint| e1.truncated(t, z) * e2.truncated(t, z);
    let sup = horocycle_sup(&top, cfg.y_max);
    if cfg.y_max > h && sup > 1e-12 {
        return Err(AutomorphicError::TailMissing { y_max: cfg.y_max, sup });
    }
    Ok(grid.integrate(&values))
}

/// (lhs, rhs, deviation) at the default grid.
pub fn maass_selberg(s1: Complex64, s2: Complex64, t: f64) -> Result<(Complex64, Complex64, f64), AutomorphicError> {
    let r = maass_selberg_with(s1, s2, t, &FdConfig::default())?;
    Ok((Complex64::new(r.lhs[0], r.lhs[1]), Complex64::new(r.rhs[0], r.rhs[1]), r.deviation))
}

/// Both sides of the relation. The integral is taken against ½dμ, the
/// measure under which the torus pairing ⟨a x^{1+s}, b x^{1−s}⟩ = ab holds;
/// `base` supplies node counts and is given the truncation breaks.
pub fn maass_selberg_with(
    s1: Complex64,
    s2: Complex64,
    t: f64,
    base: &FdConfig,
) -> Result<MaassSelbergReport, AutomorphicError> {
    check_parameters(s1, s2)?;
    if t < 0.0 {
        return Err(AutomorphicError::DegenerateParameter { s1, s2 });
    }
    let rhs = maass_selberg_rhs(s1, s2, t)?;
    let full = truncated_product_integral(s1, s2, t, &truncation_grid(t, base))?;
    let lhs = 0.5 * full;
    Ok(MaassSelbergReport {
        s1: pair(s1),
        s2: pair(s2),
        t,
        lhs: pair(lhs),
        rhs: pair(rhs),
        deviation: (lhs - rhs).norm(),
        lhs_full_measure: pair(full),
    })
}
