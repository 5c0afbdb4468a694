//! Vertical-line integrals, Mellin inversion and the Plancherel formula.
//!
//! The inversion formula for F = f̌ on Re s = σ is
//!
//! f(x) = (1/2πi)∫_σ F(s)x^s ds − Σ_{Re s₀<σ} Res⁺ + Σ_{Re s₀>σ} Res⁻
//!        + ½Σ_{Re s₀=σ}(Res⁻ − Res⁺),
//!
//! residues taken of F(s)x^s, the integral as a principal value.

use meromorphic_core::{
    charged_product, negate_argument, Charge, ChargeSelector, ChargedMeromorphicFunction, DecayClass,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::erf::{erf, erfc};

use crate::aff::AsymptoticallyFiniteFunction;
use crate::carrier::{factorial, Side};
use crate::error::TorusError;
use crate::mellin::mellin;

const ON_LINE: f64 = 1e-12;
/// Width parameter of the Gaussian pole templates e^{bz²}/z^m.
const TEMPLATE_B: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    pub t_max: f64,
    pub step: f64,
    /// Poles closer than this to the line are subtracted before quadrature
    /// for rapidly decaying integrands.
    pub near: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { t_max: 40.0, step: 0.01, near: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    Left,
    Right,
    OnLine,
}

/// One discrete contribution to an inversion: the signed quantity added
/// to the contour integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueContribution {
    pub location: [f64; 2],
    pub placement: Placement,
    /// Charge whose residue is used; `None` for the on-line ½(Res⁻ − Res⁺).
    pub charge: Option<&'static str>,
    pub value: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InversionBreakdown {
    pub sigma: f64,
    pub x: f64,
    pub contour: [f64; 2],
    pub residues: Vec<ResidueContribution>,
    pub value: [f64; 2],
}

impl InversionBreakdown {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }

    pub fn contour(&self) -> Complex64 {
        Complex64::new(self.contour[0], self.contour[1])
    }

    /// Sum of the contributions from poles at `location` with the given
    /// placement.
    pub fn contribution(&self, location: Complex64, placement: Placement) -> Complex64 {
        self.residues
            .iter()
            .filter(|r| r.placement == placement && close(r.location, location))
            .map(|r| Complex64::new(r.value[0], r.value[1]))
            .sum()
    }

    /// Rows `kind,re_loc,im_loc,charge,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,location_re,location_im,charge,value_re,value_im\n");
        out.push_str(&format!("contour,,,,{:.17e},{:.17e}\n", self.contour[0], self.contour[1]));
        for r in &self.residues {
            let kind = match r.placement {
                Placement::Left => "left",
                Placement::Right => "right",
                Placement::OnLine => "on_line",
            };
            out.push_str(&format!(
                "{kind},{:.17e},{:.17e},{},{:.17e},{:.17e}\n",
                r.location[0],
                r.location[1],
                r.charge.unwrap_or("half_difference"),
                r.value[0],
                r.value[1]
            ));
        }
        out.push_str(&format!("total,,,,{:.17e},{:.17e}\n", self.value[0], self.value[1]));
        out
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn close(a: [f64; 2], b: Complex64) -> bool {
    (Complex64::new(a[0], a[1]) - b).norm() < 1e-10
}

/// e^{bz²}z^{−m}Σ_{2j<m}(−b)^j z^{2j}/j!: rapidly decaying, polar part z^{−m}.
fn template(m: usize, z: Complex64) -> Complex64 {
    let mut poly = Complex64::new(0.0, 0.0);
    let mut j = 0;
    while 2 * j < m {
        poly += (-TEMPLATE_B).powi(j as i32) / factorial(j) * z.powi(2 * j as i32);
        j += 1;
    }
    (TEMPLATE_B * z * z).exp() * poly / z.powi(m as i32)
}

/// (1/2πi)∫_{Re z=τ} template(m, z) e^{Lz} dz (principal value for τ = 0).
fn template_integral(m: usize, tau: f64, l: f64, cfg: &ContourConfig) -> Result<Complex64, TorusError> {
    let k = 0.5 / TEMPLATE_B.sqrt();
    if m == 1 {
        let v = if tau.abs() < ON_LINE {
            0.5 * erf(k * l)
        } else if tau > 0.0 {
            0.5 * erfc(-k * l)
        } else {
            -0.5 * erfc(k * l)
        };
        return Ok(Complex64::new(v, 0.0));
    }
    if tau.abs() < ON_LINE {
        return Err(TorusError::HigherOrderOnContour { at: Complex64::new(0.0, 0.0), order: m });
    }
    // no singularity between τ and ±1
    let shifted = tau.signum();
    let n = (cfg.t_max / cfg.step).round() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        let z = Complex64::new(shifted, j as f64 * cfg.step);
        acc += template(m, z) * (l * z).exp();
    }
    Ok(acc * cfg.step / (2.0 * std::f64::consts::PI))
}

/// (1/2πi)∫_σ a(s − s₀)^{−m} x^s ds as a symmetric limit.
fn rational_integral(m: usize, a: Complex64, s0: Complex64, sigma: f64, l: f64) -> Result<Complex64, TorusError> {
    let tau = sigma - s0.re;
    if tau.abs() < ON_LINE {
        if m >= 2 {
            return Err(TorusError::HigherOrderOnContour { at: s0, order: m });
        }
        return Ok(0.5 * a * (s0 * l).exp() * sign0(l));
    }
    if l.abs() < 1e-15 {
        return Ok(if m == 1 { 0.5 * a * tau.signum() } else { Complex64::new(0.0, 0.0) });
    }
    let res = a * (s0 * l).exp() * l.powi(m as i32 - 1) / factorial(m - 1);
    Ok(if l > 0.0 && tau > 0.0 {
        res
    } else if l < 0.0 && tau < 0.0 {
        -res
    } else {
        Complex64::new(0.0, 0.0)
    })
}

fn sign0(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Node offset (fraction of a step) keeping nodes away from poles near the line.
fn grid_offset(imag_parts: &[f64], h: f64) -> f64 {
    let candidates = [0.5, 0.25, 0.75, 0.375, 0.625, 0.125, 0.875];
    let score = |off: f64| {
        imag_parts
            .iter()
            .map(|t| {
                let r = ((t / h) - off).rem_euclid(1.0);
                r.min(1.0 - r)
            })
            .fold(1.0, f64::min)
    };
    candidates.iter().cloned().fold((0.5, -1.0), |best, off| {
        let s = score(off);
        if s > best.1 + 1e-12 {
            (off, s)
        } else {
            best
        }
    })
    .0
}

/// F on a vertical line with the near (or all) polar parts removed,
/// tabulated once and reused for every x.
pub struct PreparedContour {
    sigma: f64,
    rapid: bool,
    step: f64,
    cfg: ContourConfig,
    subtracted: Vec<(Complex64, Vec<Complex64>)>,
    values: Vec<(f64, Complex64)>,
    poles: Vec<meromorphic_core::ChargedLaurent>,
}

impl PreparedContour {
    pub fn new(f: &ChargedMeromorphicFunction, sigma: f64, cfg: &ContourConfig) -> Result<Self, TorusError> {
        if !f.strip.contains(sigma) {
            return Err(meromorphic_core::MeromorphicError::OutsideStrip { sigma }.into());
        }
        let rapid = match f.decay {
            DecayClass::Rapid => true,
            DecayClass::Polynomial(_) => false,
            DecayClass::Unknown => return Err(TorusError::Decay("decay class unknown".into())),
        };
        for p in &f.poles {
            if (p.location.re - sigma).abs() < ON_LINE && p.max_depth() >= 2 {
                return Err(TorusError::HigherOrderOnContour { at: p.location, order: p.max_depth() });
            }
        }
        let subtracted: Vec<(Complex64, Vec<Complex64>)> = f
            .poles
            .iter()
            .filter(|p| !rapid || ((p.location.re - sigma).abs() < cfg.near && p.location.im.abs() < cfg.t_max + 2.0))
            .map(|p| (p.location, p.total()))
            .collect();
        let near_imag: Vec<f64> = subtracted
            .iter()
            .filter(|(s0, _)| (s0.re - sigma).abs() < cfg.step)
            .map(|(s0, _)| s0.im)
            .collect();
        let h = cfg.step;
        let off = grid_offset(&near_imag, h);
        let n = (cfg.t_max / h).ceil() as i64;
        let eval = f.evaluator();
        let g = |t: f64| {
            let s = Complex64::new(sigma, t);
            let mut v = eval(s);
            for (s0, coeffs) in &subtracted {
                let z = s - s0;
                for (k, a) in coeffs.iter().enumerate() {
                    if a.norm() == 0.0 {
                        continue;
                    }
                    v -= if rapid { a * template(k + 1, z) } else { a / z.powi(k as i32 + 1) };
                }
            }
            v
        };
        let values: Vec<(f64, Complex64)> = (-n..n)
            .into_par_iter()
            .map(|j| {
                let t = (j as f64 + off) * h;
                (t, g(t))
            })
            .collect();
        let peak = values.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
        let edge = values
            .iter()
            .filter(|(t, _)| t.abs() > cfg.t_max - 1.0)
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        if !(edge <= 1e-9 * peak.max(1.0)) {
            return Err(TorusError::Decay(format!(
                "integrand {edge:e} at |t| ≈ {} (peak {peak:e})",
                cfg.t_max
            )));
        }
        Ok(Self { sigma, rapid, step: h, cfg: *cfg, subtracted, values, poles: f.poles.clone() })
    }

    /// Principal value of (1/2πi)∫_{Re s=σ} F(s)x^s ds.
    pub fn integral(&self, x: f64) -> Result<Complex64, TorusError> {
        let l = x.ln();
        let sigma = self.sigma;
        let mut analytic = Complex64::new(0.0, 0.0);
        for (s0, coeffs) in &self.subtracted {
            for (k, a) in coeffs.iter().enumerate() {
                if a.norm() == 0.0 {
                    continue;
                }
                let m = k + 1;
                analytic += if self.rapid {
                    let j = template_integral(m, sigma - s0.re, l, &self.cfg).map_err(|e| match e {
                        TorusError::HigherOrderOnContour { order, .. } => {
                            TorusError::HigherOrderOnContour { at: *s0, order }
                        }
                        e => e,
                    })?;
                    a * (s0 * l).exp() * j
                } else {
                    rational_integral(m, *a, *s0, sigma, l)?
                };
            }
        }
        let sum: Complex64 = self.values.iter().map(|&(t, v)| v * (Complex64::new(sigma, t) * l).exp()).sum();
        Ok(sum * self.step / (2.0 * std::f64::consts::PI) + analytic)
    }

    /// Contour integral together with the charged residue terms.
    pub fn breakdown(&self, x: f64) -> Result<InversionBreakdown, TorusError> {
        let sigma = self.sigma;
        let contour = self.integral(x)?;
        let mut residues = Vec::new();
        let mut total = contour;
        for p in &self.poles {
            let d = p.location.re - sigma;
            let mut push = |placement, charge: Option<&'static str>, v: Complex64| {
                total += v;
                residues.push(ResidueContribution { location: pair(p.location), placement, charge, value: pair(v) });
            };
            if d.abs() < ON_LINE {
                let v = 0.5
                    * (p.residue_against_power(ChargeSelector::Minus, x)
                        - p.residue_against_power(ChargeSelector::Plus, x));
                push(Placement::OnLine, None, v);
            } else if d < 0.0 {
                if p.has(Charge::Plus) {
                    push(Placement::Left, Some("plus"), -p.residue_against_power(ChargeSelector::Plus, x));
                }
            } else if p.has(Charge::Minus) {
                push(Placement::Right, Some("minus"), p.residue_against_power(ChargeSelector::Minus, x));
            }
        }
        Ok(InversionBreakdown { sigma, x, contour: pair(contour), residues, value: pair(total) })
    }
}

/// Principal value of (1/2πi)∫_{Re s=σ} F(s)x^s ds.
pub fn vertical_integral(
    f: &ChargedMeromorphicFunction,
    sigma: f64,
    x: f64,
    cfg: &ContourConfig,
) -> Result<Complex64, TorusError> {
    PreparedContour::new(f, sigma, cfg)?.integral(x)
}

/// Contour integral together with the charged residue terms.
pub fn inversion_breakdown(
    f: &ChargedMeromorphicFunction,
    sigma: f64,
    x: f64,
    cfg: &ContourConfig,
) -> Result<InversionBreakdown, TorusError> {
    PreparedContour::new(f, sigma, cfg)?.breakdown(x)
}

/// f(x) for every x in `xs` from one tabulation of F on the line.
pub fn mellin_inverse_grid(f: &ChargedMeromorphicFunction, sigma: f64, xs: &[f64]) -> Result<Vec<Complex64>, TorusError> {
    let prepared = PreparedContour::new(f, sigma, &ContourConfig::default())?;
    xs.iter().map(|&x| Ok(prepared.breakdown(x)?.value())).collect()
}

pub fn mellin_inverse(f: &ChargedMeromorphicFunction, sigma: f64, x: f64) -> Result<Complex64, TorusError> {
    Ok(inversion_breakdown(f, sigma, x, &ContourConfig::default())?.value())
}

/// Regularized ∫ f d×x, i.e. f̌(0).
pub fn regularized_integral(f: &AsymptoticallyFiniteFunction) -> Result<Complex64, TorusError> {
    if f.terms.iter().any(|t| t.exponent.norm() < 1e-12) {
        return Err(TorusError::CriticalExponent);
    }
    Ok(mellin(f)?.eval(Complex64::new(0.0, 0.0)))
}

/// Regularized ∫ f₁f₂ d×x through the structural product.
pub fn regularized_inner_product_direct(
    f1: &AsymptoticallyFiniteFunction,
    f2: &AsymptoticallyFiniteFunction,
) -> Result<Complex64, TorusError> {
    regularized_integral(&f1.product(f2))
}

/// F(s) = f̌₁(s)f̌₂(−s), the integrand of the Plancherel formula.
pub fn plancherel_integrand(
    f1: &AsymptoticallyFiniteFunction,
    f2: &AsymptoticallyFiniteFunction,
) -> Result<ChargedMeromorphicFunction, TorusError> {
    let m1 = mellin(f1)?;
    let m2 = negate_argument(&mellin(f2)?);
    Ok(charged_product(&m1, &m2)?)
}

/// ⟨f₁, f₂⟩ as the inversion formula for F at x = 1.
pub fn plancherel_breakdown(
    f1: &AsymptoticallyFiniteFunction,
    f2: &AsymptoticallyFiniteFunction,
    sigma: f64,
    cfg: &ContourConfig,
) -> Result<InversionBreakdown, TorusError> {
    inversion_breakdown(&plancherel_integrand(f1, f2)?, sigma, 1.0, cfg)
}

pub fn plancherel_inner_product(
    f1: &AsymptoticallyFiniteFunction,
    f2: &AsymptoticallyFiniteFunction,
    sigma: f64,
) -> Result<Complex64, TorusError> {
    Ok(plancherel_breakdown(f1, f2, sigma, &ContourConfig::default())?.value())
}

/// Plancherel against a function known only through its Mellin data on
/// Re s ≤ 0. `f1` must have no exponents at 0.
pub fn almost_l2_plancherel(
    f1: &AsymptoticallyFiniteFunction,
    f2_data: &ChargedMeromorphicFunction,
    sigma: f64,
    cfg: &ContourConfig,
) -> Result<InversionBreakdown, TorusError> {
    if f1.terms.iter().any(|t| t.side == Side::Zero) {
        return Err(TorusError::ZeroSideExponents);
    }
    let f = charged_product(&mellin(f1)?, &negate_argument(f2_data))?;
    inversion_breakdown(&f, sigma, 1.0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_has_unit_polar_part() {
        for m in 1..5 {
            // residue of z^{m−1}·template is 1
            let r = 1e-2;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..256 {
                let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 256.0);
                acc += template(m, z) * z.powi(m as i32);
            }
            assert!((acc / 256.0 - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn template_integrals_satisfy_the_jump_relation() {
        // right minus left equals the residue of template·e^{Lz} at 0
        let cfg = ContourConfig::default();
        for l in [-0.7, 0.0, 1.3] {
            for m in 1..4 {
                let jump = template_integral(m, 0.5, l, &cfg).unwrap() - template_integral(m, -0.5, l, &cfg).unwrap();
                let res = l.powi(m as i32 - 1) / factorial(m - 1);
                assert!((jump - res).norm() < 1e-10, "m={m} L={l}: {jump}");
            }
        }
    }
}
