//! Functions on the boundary A ≅ ℝ×₊ of the cusp, in the height
//! coordinate y, together with their model on the torus in x = y^{1/2}.
//!
//! A boundary function f corresponds to the torus function
//! g(x) = x^{−1}f(x²), so that f̌(s) = ǧ(s) = ½∫ f(y) y^{−(1+s)/2} d×y and a
//! cusp term y^{(1+s₀)/2} becomes the exponent x^{s₀} at ∞.

use meromorphic_core::ChargedMeromorphicFunction;
use num_complex::Complex64;
use torus_calculus::{mellin, AsymptoticallyFiniteFunction, Carrier, ExponentTerm, Side};

use crate::error::AutomorphicError;

/// Carrier for cusp terms. Steep enough that the term dies quickly
/// toward the funnel, which keeps coset sums short.
pub const CUSP_CARRIER: Carrier = Carrier::Smooth(3.0);

/// Relative size below which a funnel value is treated as zero.
const FUNNEL_CUT: f64 = 1e-18;
const SCAN_STEP: f64 = 0.05;
const SCAN_DEPTH: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspTerm {
    pub exponent: Complex64,
    pub coefficient: Complex64,
}

/// Where a boundary function becomes negligible toward y → 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunnelProfile {
    /// max |f| on (0, 1.2]
    pub peak: f64,
    /// |f(y)| < 1e-18·peak for every sampled y ≤ y_cut
    pub y_cut: f64,
    /// ∫₀^{y_cut} |f(η)|·(3/π)η^{−2} dη, a bound for the omitted cosets
    pub tail: f64,
}

#[derive(Clone)]
pub struct BoundaryFunction {
    model: AsymptoticallyFiniteFunction,
    zero: bool,
}

impl std::fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryFunction").field("cusp_terms", &self.cusp_terms()).field("zero", &self.zero).finish()
    }
}

impl BoundaryFunction {
    /// f = core + Σ c·y^{(1+s₀)/2} (1 − η) with the cusp carrier η.
    pub fn new(core: impl Fn(f64) -> Complex64 + Send + Sync + 'static, cusp: &[CuspTerm]) -> Self {
        let terms = cusp
            .iter()
            .map(|t| ExponentTerm::monomial(t.exponent, t.coefficient, Side::Infinity, CUSP_CARRIER))
            .collect();
        let model = AsymptoticallyFiniteFunction::new(move |x: f64| core(x * x) / x, terms);
        Self { model, zero: false }
    }

    /// y^α e^{−β(y + 1/y)}; its transform is K_{α−(1+s)/2}(2β).
    pub fn bessel(alpha: f64, beta: f64) -> Self {
        Self::new(move |y: f64| Complex64::new(y.powf(alpha) * (-beta * (y + 1.0 / y)).exp(), 0.0), &[])
    }

    pub fn zero() -> Self {
        Self { model: AsymptoticallyFiniteFunction::from_terms(Vec::new()), zero: true }
    }

    /// Wraps a torus function; exponents at 0 would make f grow toward the
    /// funnel and are rejected.
    pub fn from_model(model: AsymptoticallyFiniteFunction) -> Result<Self, AutomorphicError> {
        if let Some(t) = model.terms.iter().find(|t| t.side == Side::Zero) {
            let y = 1e-6;
            return Err(AutomorphicError::FunnelDecay { y, value: t.eval(y.sqrt()).norm() * y.sqrt() });
        }
        Ok(Self { model, zero: false })
    }

    pub fn with_cusp_term(mut self, exponent: Complex64, coefficient: Complex64) -> Self {
        self.model.terms.push(ExponentTerm::monomial(exponent, coefficient, Side::Infinity, CUSP_CARRIER));
        self.zero = false;
        self
    }

    pub fn model(&self) -> &AsymptoticallyFiniteFunction {
        &self.model
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        if self.zero {
            return Complex64::new(0.0, 0.0);
        }
        let x = y.sqrt();
        self.model.eval(x) * x
    }

    /// Cusp terms, read back in the y coordinate.
    pub fn cusp_terms(&self) -> Vec<CuspTerm> {
        self.model
            .terms
            .iter()
            .filter(|t| t.side == Side::Infinity)
            .map(|t| CuspTerm { exponent: t.exponent, coefficient: t.log_poly.first().copied().unwrap_or_default() })
            .collect()
    }

    /// Σ c·y^{(1+s₀)/2}, the germ at the cusp.
    pub fn cusp_germ(&self, y: f64) -> Complex64 {
        self.cusp_terms()
            .iter()
            .map(|t| t.coefficient * Complex64::new(y, 0.0).powc((1.0 + t.exponent) * 0.5))
            .sum()
    }

    /// f̌ as a charged meromorphic function, cusp exponents giving `−` poles.
    pub fn mellin(&self) -> Result<ChargedMeromorphicFunction, AutomorphicError> {
        if self.zero {
            return Ok(ChargedMeromorphicFunction::zero());
        }
        Ok(mellin(&self.model)?)
    }

    /// Samples |f| on a logarithmic grid down to y = e^{−60}.
    pub fn funnel_profile(&self) -> Result<FunnelProfile, AutomorphicError> {
        if self.zero {
            return Ok(FunnelProfile { peak: 0.0, y_cut: f64::INFINITY, tail: 0.0 });
        }
        let top = 1.2f64.ln();
        let n = ((top + SCAN_DEPTH) / SCAN_STEP).ceil() as usize;
        let samples: Vec<(f64, f64)> = (0..=n)
            .map(|j| {
                let y = (top - j as f64 * SCAN_STEP).exp();
                (y, self.eval(y).norm())
            })
            .collect();
        let peak = samples.iter().map(|s| s.1).fold(0.0, f64::max);
        if peak == 0.0 {
            return Ok(FunnelProfile { peak, y_cut: f64::INFINITY, tail: 0.0 });
        }
        let limit = FUNNEL_CUT * peak;
        let last = samples[n];
        if !(last.1 < limit) {
            return Err(AutomorphicError::FunnelDecay { y: last.0, value: last.1 });
        }
        let start = samples.iter().rposition(|s| !(s.1 < limit)).map_or(0, |i| i + 1);
        let tail = samples[start..].iter().map(|(y, v)| v * 3.0 / std::f64::consts::PI / y * SCAN_STEP).sum();
        Ok(FunnelProfile { peak, y_cut: samples[start].0, tail })
    }

    /// Height beyond which |f(y)| stays below `tol` (sampled up to y = e^8).
    pub fn cusp_height(&self, tol: f64) -> f64 {
        let ys: Vec<f64> = (0..=160).map(|j| (0.05 * j as f64).exp()).collect();
        let last_big = ys.iter().rposition(|&y| self.eval(y).norm() >= tol);
        match last_big {
            None => 1.0,
            Some(i) => ys[(i + 1).min(ys.len() - 1)],
        }
    }
}
