//! Sine Poincaré series P(z) = Σ_{γ ∈ Γ_∞\Γ} h(Im γz) sin(2πm Re γz).
//!
//! These are Γ-invariant and odd under z ↦ −z̄; their constant term
//! vanishes identically.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use special_functions::gcd;

use crate::automorphic::{AutomorphicFunction, Source};
use crate::boundary::BoundaryFunction;
use crate::error::AutomorphicError;
use crate::point::HalfPlanePoint;
use crate::pseudo::PseudoEisenstein;

/// d⁻¹ mod c for coprime c ≥ 1.
fn inverse_mod(d: i64, c: i64) -> i64 {
    let (mut r0, mut r1) = (d.rem_euclid(c), c);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(c)
}

pub fn sine_poincare(h: &BoundaryFunction, m: u32) -> Result<AutomorphicFunction, AutomorphicError> {
    let psi = Arc::new(PseudoEisenstein::new(h.clone())?);
    let y_cut = psi.profile().y_cut;
    let height = h_height(&psi);
    let h = h.clone();
    let freq = 2.0 * PI * m as f64;
    let eval = move |z: HalfPlanePoint| -> Complex64 {
        let z = z.reduce().0;
        let mut acc = h.eval(z.y) * (freq * z.x).sin();
        for c in 1..=psi.natural_bound(z.y) as i64 {
            let cf = c as f64;
            let r2 = z.y / y_cut - cf * cf * z.y;
            if r2 < 0.0 {
                break;
            }
            let r = r2.sqrt();
            let lo = (-cf * z.x - r).ceil() as i64;
            let hi = (-cf * z.x + r).floor() as i64;
            for d in lo..=hi {
                if gcd(c, d) != 1 {
                    continue;
                }
                let a = if c == 1 { 0 } else { inverse_mod(d, c) };
                let u = cf * z.x + d as f64;
                let n = u * u + cf * cf * z.y * z.y;
                let re = a as f64 / cf - u / (cf * n);
                acc += h.eval(z.y / n) * (freq * re).sin();
            }
        }
        acc
    };
    Ok(AutomorphicFunction::new(eval, Vec::new(), height, Source::Generic))
}

fn h_height(psi: &PseudoEisenstein) -> f64 {
    psi.boundary().cusp_height(1e-3).max(2.0)
}
