//! Pseudo-Eisenstein series Ψf(z) = Σ_{γ ∈ Γ_∞\Γ} f(Im γz) and the Radon
//! transform.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use special_functions::quad::composite_nodes;
use special_functions::{euler_phi, gcd};

use crate::automorphic::{Asymptote, AutomorphicFunction, Source};
use crate::boundary::{BoundaryFunction, FunnelProfile};
use crate::error::AutomorphicError;
use crate::point::HalfPlanePoint;

/// Tail above which a truncated coset sum is flagged.
pub const TRUNCATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosetSum {
    pub value: Complex64,
    pub cosets: usize,
    /// Σ|f| over cosets skipped by the bound plus the funnel estimate.
    pub tail: f64,
}

#[derive(Debug, Clone)]
pub struct PseudoEisenstein {
    f: BoundaryFunction,
    profile: FunnelProfile,
}

impl PseudoEisenstein {
    pub fn new(f: BoundaryFunction) -> Result<Self, AutomorphicError> {
        let profile = f.funnel_profile()?;
        Ok(Self { f, profile })
    }

    pub fn boundary(&self) -> &BoundaryFunction {
        &self.f
    }

    pub fn profile(&self) -> FunnelProfile {
        self.profile
    }

    /// Largest c with a coset reaching Im γz ≥ y_cut from height y.
    pub fn natural_bound(&self, y: f64) -> u64 {
        if self.f.is_zero() {
            return 0;
        }
        (1.0 / (y * self.profile.y_cut)).sqrt().floor() as u64
    }

    /// Sum over the identity coset and coprime (c, d), c ≥ 1, in order of
    /// c then d, without reducing z first. Cosets with c beyond
    /// `c_bound` are left out and counted toward the tail.
    pub fn coset_sum(&self, z: HalfPlanePoint, c_bound: Option<u64>) -> CosetSum {
        if self.f.is_zero() {
            return CosetSum { value: Complex64::new(0.0, 0.0), cosets: 0, tail: 0.0 };
        }
        let y_cut = self.profile.y_cut;
        let natural = self.natural_bound(z.y);
        let bound = c_bound.map_or(natural, |b| b.min(natural));
        let mut value = self.f.eval(z.y);
        let mut cosets = 1;
        let mut skipped = 0.0;
        for c in 1..=natural {
            let cf = c as f64;
            let r2 = z.y / y_cut - cf * cf * z.y * z.y;
            if r2 < 0.0 {
                break;
            }
            let r = r2.sqrt();
            let lo = (-cf * z.x - r).ceil() as i64;
            let hi = (-cf * z.x + r).floor() as i64;
            for d in lo..=hi {
                if gcd(c as i64, d) != 1 {
                    continue;
                }
                let u = cf * z.x + d as f64;
                let v = self.f.eval(z.y / (u * u + cf * cf * z.y * z.y));
                if c <= bound {
                    value += v;
                    cosets += 1;
                } else {
                    skipped += v.norm();
                }
            }
        }
        CosetSum { value, cosets, tail: skipped + self.profile.tail }
    }

    /// Ψf(z), evaluated at the reduction of z.
    pub fn eval(&self, z: HalfPlanePoint) -> Complex64 {
        self.coset_sum(z.reduce().0, None).value
    }

    /// Ψf(z) with at most `coset_bound` for |c|.
    pub fn eval_bounded(&self, z: HalfPlanePoint, coset_bound: u64) -> Result<Complex64, AutomorphicError> {
        let s = self.coset_sum(z.reduce().0, Some(coset_bound));
        if s.tail > TRUNCATION_TOLERANCE {
            return Err(AutomorphicError::TruncationWarning { value: s.value, tail: s.tail });
        }
        Ok(s.value)
    }

    /// Ψf as an automorphic function carrying the cusp germ of f.
    pub fn automorphic(&self) -> AutomorphicFunction {
        let me = Arc::new(self.clone());
        let asymptotes = self
            .f
            .cusp_terms()
            .into_iter()
            .map(|t| Asymptote { exponent: t.exponent, coefficient: t.coefficient })
            .collect();
        let height = self.f.cusp_height(1e-3).max(2.0);
        AutomorphicFunction::new(move |z| me.eval(z), asymptotes, height, Source::PseudoEisenstein(self.f.clone()))
    }

    /// Rf(y) = Σ_c φ(c)·2y∫₀^∞ f(1/(c²y cosh²v)) cosh v dv, the part of
    /// the constant term of Ψf coming from cosets with c ≥ 1.
    pub fn radon(&self, y: f64) -> Complex64 {
        if self.f.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let y_cut = self.profile.y_cut;
        let cmax = self.natural_bound(y);
        (1..=cmax)
            .map(|c| {
                let cf = c as f64;
                let top = 1.0 / (cf * cf * y);
                let vmax = (top / y_cut).sqrt().acosh();
                if !(vmax > 0.0) {
                    return Complex64::new(0.0, 0.0);
                }
                let panels = (vmax / 0.5).ceil().max(1.0) as usize;
                let breaks: Vec<f64> = (0..=panels).map(|k| vmax * k as f64 / panels as f64).collect();
                let integral: Complex64 = composite_nodes(&breaks, 16)
                    .into_iter()
                    .map(|(v, w)| {
                        let ch = v.cosh();
                        self.f.eval(top / (ch * ch)) * (ch * w)
                    })
                    .sum();
                integral * (2.0 * y * euler_phi(c) as f64)
            })
            .sum()
    }

    /// R̂f(s) = ½∫ Rf(y) y^{−(1+s)/2} d×y by quadrature, for Re s < −1.
    ///
    /// Rf is nearly constant toward the funnel, so the range below `y0` is
    /// closed with Rf(y0)·y0^a/(2a), a = −(1+s)/2.
    pub fn radon_mellin(&self, s: Complex64, y0: f64) -> Result<Complex64, AutomorphicError> {
        if !(s.re < -1.0) {
            return Err(AutomorphicError::OutsideConvergence { s });
        }
        if self.f.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let a = -(1.0 + s) * 0.5;
        let u0 = y0.ln();
        let u1 = (1.0 / self.profile.y_cut).ln();
        let panels = ((u1 - u0) / 0.25).ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=panels).map(|k| u0 + (u1 - u0) * k as f64 / panels as f64).collect();
        let body: Complex64 = composite_nodes(&breaks, 16)
            .into_par_iter()
            .map(|(u, w)| self.radon(u.exp()) * (a * u).exp() * w)
            .collect::<Vec<_>>()
            .into_iter()
            .sum();
        let head = self.radon(y0) * (a * u0).exp() / a;
        Ok((body + head) * 0.5)
    }
}

/// Ψf(z) with |c| capped by `coset_bound`; warns with the partial value
/// when the estimated tail exceeds 1e-8.
pub fn pseudo_eisenstein(
    f: &BoundaryFunction,
    z: HalfPlanePoint,
    coset_bound: u64,
) -> Result<Complex64, AutomorphicError> {
    PseudoEisenstein::new(f.clone())?.eval_bounded(z, coset_bound)
}

/// Rf(y); equals the constant term of Ψf at y minus f(y).
pub fn radon_transform(f: &BoundaryFunction, y: f64) -> Result<Complex64, AutomorphicError> {
    Ok(PseudoEisenstein::new(f.clone())?.radon(y))
}
