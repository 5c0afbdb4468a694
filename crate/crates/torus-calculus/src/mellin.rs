//! Mellin transform f̌(s) = ∫ f(x) x^{−s} d×x with meromorphic continuation.

use std::sync::Arc;

use meromorphic_core::{Charge, ChargedLaurent, ChargedMeromorphicFunction, DecayClass, Strip};
use num_complex::Complex64;
use special_functions::quad::composite_nodes;

use crate::aff::AsymptoticallyFiniteFunction;
use crate::carrier::{factorial, Side};
use crate::error::TorusError;

const U_MAX: f64 = 40.0;
const PANEL: f64 = 0.25;
const ORDER: usize = 16;

/// Tabulated core on a composite Gauss–Legendre grid in u = log x.
#[derive(Debug, Clone)]
pub struct CoreQuadrature {
    /// (u, weight·core(e^u)) with vanishing panels dropped.
    nodes: Vec<(f64, Complex64)>,
}

impl CoreQuadrature {
    pub fn new(f: &AsymptoticallyFiniteFunction) -> Self {
        let panels = (2.0 * U_MAX / PANEL).round() as usize;
        let breaks: Vec<f64> = (0..=panels).map(|k| -U_MAX + k as f64 * PANEL).collect();
        let raw = composite_nodes(&breaks, ORDER);
        let core = f.core();
        let n0 = f.tail_decay_hint;
        // panels negligible against the strip |Re s| ≤ N₀ are dropped
        let panels: Vec<(f64, Vec<(f64, Complex64)>)> = raw
            .chunks(ORDER)
            .map(|chunk| {
                let vals: Vec<(f64, Complex64)> = chunk.iter().map(|&(u, w)| (u, core(u.exp()) * w)).collect();
                let size = vals.iter().map(|(u, v)| v.norm() * (n0 * u.abs()).exp()).fold(0.0, f64::max);
                (size, vals)
            })
            .collect();
        let peak = panels.iter().map(|p| p.0).fold(0.0, f64::max);
        let nodes = panels
            .into_iter()
            .filter(|(size, _)| *size > 1e-20 * peak)
            .flat_map(|(_, vals)| vals)
            .collect();
        Self { nodes }
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.nodes.iter().map(|&(u, v)| v * (-s * u).exp()).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// |core(x)|·max(x,1/x)^{N₀} sampled at |log x| ∈ {5, …, 30} must fall to
/// 1e-8 of its peak by the far end.
pub fn check_core_tail(f: &AsymptoticallyFiniteFunction) -> Result<(), TorusError> {
    let n0 = f.tail_decay_hint;
    for (side, sign) in [("zero", -1.0), ("infinity", 1.0)] {
        let v: Vec<f64> = (1..=6)
            .map(|k| {
                let u = 5.0 * k as f64;
                f.core_value((sign * u).exp()).norm() * (n0 * u).exp()
            })
            .collect();
        let peak = v.iter().cloned().fold(1.0, f64::max);
        let tail = v[4].max(v[5]);
        if !(tail <= 1e-8 * peak) {
            return Err(TorusError::TailDecay { side, value: tail });
        }
    }
    Ok(())
}

/// Charged pole data contributed by the exponent terms.
pub fn term_poles(f: &AsymptoticallyFiniteFunction) -> Vec<ChargedLaurent> {
    let mut poles: Vec<ChargedLaurent> = Vec::new();
    for t in &f.terms {
        let charge = match t.side {
            Side::Zero => Charge::Plus,
            Side::Infinity => Charge::Minus,
        };
        let sign = match t.side {
            Side::Zero => -1.0,
            Side::Infinity => 1.0,
        };
        let idx = match poles.iter().position(|p| (p.location - t.exponent).norm() < 1e-12) {
            Some(i) => i,
            None => {
                poles.push(ChargedLaurent::new(t.exponent));
                poles.len() - 1
            }
        };
        let slot = poles[idx].charged_mut(charge);
        for (m, c) in t.log_poly.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            if slot.len() < m + 1 {
                slot.resize(m + 1, Complex64::new(0.0, 0.0));
            }
            slot[m] += c * sign * factorial(m);
        }
    }
    poles.retain(|p| p.max_depth() > 0);
    poles
}

/// The Mellin transform as a charged meromorphic function: exponents at 0
/// give `+` poles, exponents at ∞ give `−` poles.
pub fn mellin(f: &AsymptoticallyFiniteFunction) -> Result<ChargedMeromorphicFunction, TorusError> {
    check_core_tail(f)?;
    let quad = Arc::new(CoreQuadrature::new(f));
    let terms = f.terms.clone();
    let decay = if f.has_sharp_terms() || !f.core_smooth {
        DecayClass::Polynomial(1.0)
    } else {
        DecayClass::Rapid
    };
    let n0 = f.tail_decay_hint;
    Ok(ChargedMeromorphicFunction::new(
        move |s| quad.eval(s) + terms.iter().map(|t| t.transform(s)).sum::<Complex64>(),
        term_poles(f),
        Strip::new(-n0, n0),
        decay,
    ))
}

/// ∫ core(x) x^{−s} d×x alone.
pub fn core_mellin(f: &AsymptoticallyFiniteFunction, s: Complex64) -> Complex64 {
    CoreQuadrature::new(f).eval(s)
}
