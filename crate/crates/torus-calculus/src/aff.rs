//! Asymptotically finite functions on ℝ×₊: a rapidly decaying core plus
//! finitely many exponent terms x^{s′}P(log x) localized at 0 or ∞.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::carrier::{Carrier, Side};
use crate::error::TorusError;

pub type Core = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

const DEFAULT_TAIL_HINT: f64 = 4.0;

/// x^{s′}·P(log x)·carrier(x); `log_poly[k]` multiplies (log x)^k.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentTerm {
    pub exponent: Complex64,
    pub log_poly: Vec<Complex64>,
    pub side: Side,
    pub carrier: Carrier,
}

impl ExponentTerm {
    pub fn new(exponent: Complex64, log_poly: Vec<Complex64>, side: Side, carrier: Carrier) -> Self {
        Self { exponent, log_poly, side, carrier }
    }

    /// c·x^{s′} with no logarithms.
    pub fn monomial(exponent: Complex64, coeff: Complex64, side: Side, carrier: Carrier) -> Self {
        Self::new(exponent, vec![coeff], side, carrier)
    }

    /// x^{s′}P(log x) without the carrier.
    pub fn bare(&self, u: f64) -> Complex64 {
        (self.exponent * u).exp() * poly_eval(&self.log_poly, u)
    }

    pub fn eval_log(&self, u: f64) -> Complex64 {
        let w = self.carrier.weight(self.side, u);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.bare(u) * w
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.eval_log(x.ln())
    }

    /// Mellin transform ∫ term·x^{−s} d×x, meromorphically continued.
    pub fn transform(&self, s: Complex64) -> Complex64 {
        let z = s - self.exponent;
        self.log_poly
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(m, c)| c * self.carrier.transform(self.side, m, z))
            .sum()
    }

    pub fn degree(&self) -> usize {
        self.log_poly.iter().rposition(|c| c.norm() > 0.0).map_or(0, |d| d)
    }
}

pub(crate) fn poly_eval(p: &[Complex64], u: f64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + c)
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// f = core + Σ terms.
#[derive(Clone)]
pub struct AsymptoticallyFiniteFunction {
    core: Core,
    pub terms: Vec<ExponentTerm>,
    /// N₀ with |core(x)| ≪ min(x, 1/x)^{N₀}.
    pub tail_decay_hint: f64,
    /// False when the core has jumps (its Mellin transform then decays
    /// only like 1/|t|).
    pub core_smooth: bool,
}

impl fmt::Debug for AsymptoticallyFiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AsymptoticallyFiniteFunction")
            .field("terms", &self.terms)
            .field("tail_decay_hint", &self.tail_decay_hint)
            .field("core_smooth", &self.core_smooth)
            .finish()
    }
}

impl AsymptoticallyFiniteFunction {
    pub fn new(core: impl Fn(f64) -> Complex64 + Send + Sync + 'static, terms: Vec<ExponentTerm>) -> Self {
        Self { core: Arc::new(core), terms, tail_decay_hint: DEFAULT_TAIL_HINT, core_smooth: true }
    }

    pub fn from_terms(terms: Vec<ExponentTerm>) -> Self {
        Self::new(|_| Complex64::new(0.0, 0.0), terms)
    }

    pub fn with_tail_hint(mut self, n0: f64) -> Self {
        self.tail_decay_hint = n0;
        self
    }

    pub fn with_rough_core(mut self) -> Self {
        self.core_smooth = false;
        self
    }

    pub fn core(&self) -> Core {
        self.core.clone()
    }

    pub fn core_value(&self, x: f64) -> Complex64 {
        (self.core)(x)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let u = x.ln();
        (self.core)(x) + self.terms.iter().map(|t| t.eval_log(u)).sum::<Complex64>()
    }

    pub fn exponents(&self, side: Side) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for t in self.terms.iter().filter(|t| t.side == side) {
            if !out.iter().any(|e| (e - t.exponent).norm() < 1e-12) {
                out.push(t.exponent);
            }
        }
        out
    }

    pub fn has_sharp_terms(&self) -> bool {
        self.terms.iter().any(|t| t.carrier.is_sharp())
    }

    /// Pointwise product, kept structural: same-side term pairs become
    /// exponent terms and everything else is folded into the core.
    pub fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        let mut remainders: Vec<Remainder> = Vec::new();
        let mut smooth = self.core_smooth && other.core_smooth;
        for a in &self.terms {
            for b in &other.terms {
                let exponent = a.exponent + b.exponent;
                let poly = poly_mul(&a.log_poly, &b.log_poly);
                if a.side != b.side {
                    if a.carrier.is_sharp() && b.carrier.is_sharp() {
                        continue;
                    }
                    smooth &= !(a.carrier.is_sharp() || b.carrier.is_sharp());
                    remainders.push(Remainder::Cross { exponent, poly, a: (a.side, a.carrier), b: (b.side, b.carrier) });
                    continue;
                }
                let side = a.side;
                match (a.carrier, b.carrier) {
                    (Carrier::Sharp, Carrier::Sharp) => {
                        terms.push(ExponentTerm::new(exponent, poly, side, Carrier::Sharp));
                    }
                    (Carrier::Smooth(k1), Carrier::Smooth(k2)) => {
                        terms.push(ExponentTerm::new(exponent, poly.clone(), side, Carrier::Smooth(k1)));
                        remainders.push(Remainder::Defect {
                            exponent,
                            poly,
                            side,
                            kept: Carrier::Smooth(k1),
                            dropped: Carrier::Smooth(k2),
                        });
                    }
                    (Carrier::Sharp, c) | (c, Carrier::Sharp) => {
                        smooth = false;
                        terms.push(ExponentTerm::new(exponent, poly.clone(), side, Carrier::Sharp));
                        remainders.push(Remainder::Defect { exponent, poly, side, kept: Carrier::Sharp, dropped: c });
                    }
                }
            }
        }
        if (self.has_sharp_terms() && !other.terms.is_empty()) || (other.has_sharp_terms() && !self.terms.is_empty()) {
            // c·T with T sharp jumps at x = 1 unless the core vanishes
            smooth = false;
        }
        let c1 = self.core.clone();
        let c2 = other.core.clone();
        let t1 = self.terms.clone();
        let t2 = other.terms.clone();
        let core = move |x: f64| {
            let u = x.ln();
            let a = c1(x);
            let b = c2(x);
            let mut v = a * b;
            if a.norm() > 0.0 {
                v += a * t2.iter().map(|t| t.eval_log(u)).sum::<Complex64>();
            }
            if b.norm() > 0.0 {
                v += b * t1.iter().map(|t| t.eval_log(u)).sum::<Complex64>();
            }
            v + remainders.iter().map(|r| r.eval(u)).sum::<Complex64>()
        };
        let shift = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| t.exponent.re.abs())
            .fold(0.0, f64::max);
        let hint = (self.tail_decay_hint.min(other.tail_decay_hint) - shift).max(1.0);
        let mut out = Self::new(core, merge_terms(terms)).with_tail_hint(hint);
        out.core_smooth = smooth;
        out
    }

    /// (x d/dx − s₀)f, structurally. Smooth carriers only.
    pub fn euler_derivative_shifted(&self, s0: Complex64) -> Result<Self, TorusError> {
        if self.has_sharp_terms() {
            return Err(TorusError::SharpDerivative);
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            // (s′ − s₀)P + P′
            let mut p: Vec<Complex64> = t.log_poly.iter().map(|c| c * (t.exponent - s0)).collect();
            for (k, c) in t.log_poly.iter().enumerate().skip(1) {
                p[k - 1] += c * k as f64;
            }
            terms.push(ExponentTerm::new(t.exponent, p, t.side, t.carrier));
        }
        let core = self.core.clone();
        let old_terms = self.terms.clone();
        let derived = move |x: f64| {
            let u = x.ln();
            let d = |h: f64| (core((u + h).exp()) - core((u - h).exp())) / (2.0 * h);
            let h = 1e-3;
            let dc = (16.0 * d(h / 2.0) - d(h)) / 15.0;
            let carrier_part: Complex64 = old_terms
                .iter()
                .map(|t| t.bare(u) * t.carrier.weight_derivative(t.side, u))
                .sum();
            dc - s0 * core(x) + carrier_part
        };
        Ok(Self::new(derived, terms).with_tail_hint(self.tail_decay_hint))
    }
}

enum Remainder {
    /// x^{s}P(u)·w_a(u)·w_b(u) for terms on opposite sides.
    Cross { exponent: Complex64, poly: Vec<Complex64>, a: (Side, Carrier), b: (Side, Carrier) },
    /// x^{s}P(u)·w_kept·(w_dropped − 1), written with the complement.
    Defect { exponent: Complex64, poly: Vec<Complex64>, side: Side, kept: Carrier, dropped: Carrier },
}

impl Remainder {
    fn eval(&self, u: f64) -> Complex64 {
        match self {
            Remainder::Cross { exponent, poly, a, b } => {
                let w = a.1.weight(a.0, u) * b.1.weight(b.0, u);
                if w == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                (exponent * u).exp() * poly_eval(poly, u) * w
            }
            Remainder::Defect { exponent, poly, side, kept, dropped } => {
                let w = kept.weight(*side, u) * dropped.complement(*side, u);
                if w == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                -(exponent * u).exp() * poly_eval(poly, u) * w
            }
        }
    }
}

fn merge_terms(terms: Vec<ExponentTerm>) -> Vec<ExponentTerm> {
    let mut out: Vec<ExponentTerm> = Vec::new();
    for t in terms {
        if let Some(e) = out
            .iter_mut()
            .find(|e| e.side == t.side && e.carrier == t.carrier && (e.exponent - t.exponent).norm() < 1e-14)
        {
            if e.log_poly.len() < t.log_poly.len() {
                e.log_poly.resize(t.log_poly.len(), Complex64::new(0.0, 0.0));
            }
            for (k, c) in t.log_poly.iter().enumerate() {
                e.log_poly[k] += c;
            }
        } else {
            out.push(t);
        }
    }
    out.retain(|t| t.log_poly.iter().any(|c| c.norm() > 0.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn product_agrees_pointwise() {
        let f = AsymptoticallyFiniteFunction::new(
            |x: f64| c((-(x.ln()).powi(2)).exp()),
            vec![
                ExponentTerm::monomial(c(0.5), c(1.0), Side::Zero, Carrier::Smooth(1.0)),
                ExponentTerm::new(c(-0.3), vec![c(0.0), c(2.0)], Side::Infinity, Carrier::Sharp),
            ],
        );
        let g = AsymptoticallyFiniteFunction::new(
            |x: f64| c(x.ln().sin() * (-(x.ln()).powi(2)).exp()),
            vec![
                ExponentTerm::monomial(c(0.2), c(1.0), Side::Zero, Carrier::Smooth(2.0)),
                ExponentTerm::monomial(c(0.1), c(-1.0), Side::Zero, Carrier::Sharp),
                ExponentTerm::monomial(c(-0.4), c(3.0), Side::Infinity, Carrier::Smooth(1.0)),
            ],
        );
        let p = f.product(&g);
        for x in [0.01, 0.3, 0.9, 1.0, 1.7, 40.0] {
            let d = p.eval(x) - f.eval(x) * g.eval(x);
            assert!(d.norm() < 1e-13, "x={x}: {d}");
        }
        assert!(!p.core_smooth);
    }

    #[test]
    fn derivative_of_terms() {
        let f = AsymptoticallyFiniteFunction::new(
            |x: f64| c((-(x.ln()).powi(2)).exp()),
            vec![ExponentTerm::new(c(0.5), vec![c(1.0), c(1.0)], Side::Zero, Carrier::Smooth(1.0))],
        );
        let s0 = c(0.2);
        let g = f.euler_derivative_shifted(s0).unwrap();
        for x in [0.2f64, 1.3, 3.0] {
            let h = 1e-4f64;
            let fd = (f.eval(x * h.exp()) - f.eval(x * (-h).exp())) / (2.0 * h);
            assert!((g.eval(x) - (fd - s0 * f.eval(x))).norm() < 1e-7);
        }
    }
}
