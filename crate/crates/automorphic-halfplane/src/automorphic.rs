//! Γ-invariant functions on the upper half-plane with a declared cusp
//! asymptote.

use std::sync::Arc;

use num_complex::Complex64;

use crate::boundary::BoundaryFunction;
use crate::point::HalfPlanePoint;

pub type Evaluator = Arc<dyn Fn(HalfPlanePoint) -> Complex64 + Send + Sync>;

/// φ(z) ~ coefficient·y^{(1+s₀)/2} at the cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptote {
    pub exponent: Complex64,
    pub coefficient: Complex64,
}

impl Asymptote {
    pub fn eval(&self, y: f64) -> Complex64 {
        self.coefficient * Complex64::new(y, 0.0).powc((1.0 + self.exponent) * 0.5)
    }
}

/// What the function was built from; spectral operations dispatch on it.
#[derive(Debug, Clone)]
pub enum Source {
    PseudoEisenstein(BoundaryFunction),
    Eisenstein(Complex64),
    Generic,
}

#[derive(Clone)]
pub struct AutomorphicFunction {
    eval: Evaluator,
    pub asymptotes: Vec<Asymptote>,
    /// Height past which φ minus its asymptote is of rapid decay.
    pub decay_height: f64,
    pub source: Source,
}

impl std::fmt::Debug for AutomorphicFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutomorphicFunction")
            .field("asymptotes", &self.asymptotes)
            .field("decay_height", &self.decay_height)
            .field("source", &self.source)
            .finish()
    }
}

impl AutomorphicFunction {
    pub fn new(
        eval: impl Fn(HalfPlanePoint) -> Complex64 + Send + Sync + 'static,
        asymptotes: Vec<Asymptote>,
        decay_height: f64,
        source: Source,
    ) -> Self {
        Self { eval: Arc::new(eval), asymptotes, decay_height, source }
    }

    pub fn zero() -> Self {
        Self::new(|_| Complex64::new(0.0, 0.0), Vec::new(), 1.0, Source::PseudoEisenstein(BoundaryFunction::zero()))
    }

    pub fn constant(c: Complex64) -> Self {
        let asym = Asymptote { exponent: Complex64::new(-1.0, 0.0), coefficient: c };
        Self::new(move |_| c, vec![asym], 1.0, Source::Generic)
    }

    pub fn evaluator(&self) -> Evaluator {
        self.eval.clone()
    }

    pub fn eval(&self, z: HalfPlanePoint) -> Complex64 {
        (self.eval)(z)
    }

    pub fn asymptote(&self, y: f64) -> Complex64 {
        self.asymptotes.iter().map(|a| a.eval(y)).sum()
    }

    /// max |φ(γz) − φ(z)| over the points and γ ∈ {z ↦ z+1, z ↦ −1/z}.
    pub fn invariance_defect(&self, points: &[HalfPlanePoint]) -> f64 {
        points
            .iter()
            .map(|&z| {
                let v = self.eval(z);
                (self.eval(z.translate(1.0)) - v).norm().max((self.eval(z.invert()) - v).norm())
            })
            .fold(0.0, f64::max)
    }

    /// |φ(x + iy) − asymptote(y)|·y^n, maximized over x ∈ {0, 0.1, …, 0.5}.
    pub fn asymptote_profile(&self, n: i32, ys: &[f64]) -> Vec<f64> {
        ys.iter()
            .map(|&y| {
                let a = self.asymptote(y);
                (0..=5)
                    .map(|k| (self.eval(HalfPlanePoint::new(0.1 * k as f64, y)) - a).norm())
                    .fold(0.0, f64::max)
                    * y.powi(n)
            })
            .collect()
    }

    /// The weighted remainder shrinks along Y₀·{1, 2, 4, 8} and ends below
    /// 1e-10 for every n ≤ `n_max`.
    pub fn asymptote_consistent(&self, n_max: i32) -> bool {
        let ys: Vec<f64> = (0..4).map(|k| self.decay_height * f64::powi(2.0, k)).collect();
        (0..=n_max).all(|n| {
            let p = self.asymptote_profile(n, &ys);
            let monotone = p.windows(2).all(|w| w[1] <= w[0] + 1e-14);
            monotone && p[p.len() - 1] < 1e-10
        })
    }
}
