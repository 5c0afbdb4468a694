use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::MeromorphicError;
use crate::laurent::{Charge, ChargeSelector, ChargedLaurent};

/// Locations closer than this are treated as the same point.
pub const LOCATION_TOLERANCE: f64 = 1e-10;

const CIRCLE_NODES: usize = 64;
const DEFAULT_CIRCLE_RADIUS: f64 = 0.1;

pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Closed vertical strip σ_min ≤ Re s ≤ σ_max (bounds may be infinite).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

impl Strip {
    pub const PLANE: Strip = Strip { sigma_min: f64::NEG_INFINITY, sigma_max: f64::INFINITY };

    pub fn new(sigma_min: f64, sigma_max: f64) -> Self {
        Self { sigma_min, sigma_max }
    }

    pub fn contains(&self, sigma: f64) -> bool {
        sigma >= self.sigma_min && sigma <= self.sigma_max
    }

    pub fn intersect(&self, other: &Strip) -> Strip {
        Strip::new(self.sigma_min.max(other.sigma_min), self.sigma_max.min(other.sigma_max))
    }

    pub fn negated(&self) -> Strip {
        Strip::new(-self.sigma_max, -self.sigma_min)
    }

    fn distance_to_edge(&self, s: Complex64) -> f64 {
        (s.re - self.sigma_min).min(self.sigma_max - s.re)
    }
}

/// Declared vertical growth on the strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    Rapid,
    /// |F(σ+it)| = O(|t|^{−order})
    Polynomial(f64),
    Unknown,
}

impl DecayClass {
    pub fn product(self, other: DecayClass) -> DecayClass {
        use DecayClass::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Rapid, _) | (_, Rapid) => Rapid,
            (Polynomial(a), Polynomial(b)) => Polynomial(a + b),
        }
    }

    pub fn sum(self, other: DecayClass) -> DecayClass {
        use DecayClass::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Rapid, x) | (x, Rapid) => x,
            (Polynomial(a), Polynomial(b)) => Polynomial(a.min(b)),
        }
    }
}

/// A meromorphic function on a strip with a finite list of charged poles.
///
/// The evaluator returns the full function, polar parts included.
#[derive(Clone)]
pub struct ChargedMeromorphicFunction {
    eval: Evaluator,
    pub poles: Vec<ChargedLaurent>,
    pub strip: Strip,
    pub decay: DecayClass,
}

impl fmt::Debug for ChargedMeromorphicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChargedMeromorphicFunction")
            .field("poles", &self.poles)
            .field("strip", &self.strip)
            .field("decay", &self.decay)
            .finish()
    }
}

impl ChargedMeromorphicFunction {
    pub fn new(
        eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        poles: Vec<ChargedLaurent>,
        strip: Strip,
        decay: DecayClass,
    ) -> Self {
        Self { eval: Arc::new(eval), poles, strip, decay }
    }

    pub fn entire(eval: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static, decay: DecayClass) -> Self {
        Self::new(eval, Vec::new(), Strip::PLANE, decay)
    }

    pub fn zero() -> Self {
        Self::entire(|_| Complex64::new(0.0, 0.0), DecayClass::Rapid)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::entire(move |_| c, DecayClass::Polynomial(0.0))
    }

    /// coeff·(s − s₀)^{−order} carrying the given charge.
    pub fn pole_term(location: Complex64, order: usize, coeff: Complex64, charge: Charge) -> Self {
        let mut pole = ChargedLaurent::single(location, order, coeff, charge);
        pole.regular = vec![Complex64::new(0.0, 0.0); 8];
        Self::new(
            move |s| coeff * (s - location).powi(-(order as i32)),
            vec![pole],
            Strip::PLANE,
            DecayClass::Polynomial(order as f64),
        )
    }

    pub fn evaluator(&self) -> Evaluator {
        self.eval.clone()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.eval)(s)
    }

    pub fn with_strip(mut self, strip: Strip) -> Self {
        self.strip = strip;
        self
    }

    pub fn with_decay(mut self, decay: DecayClass) -> Self {
        self.decay = decay;
        self
    }

    pub fn pole_at(&self, s0: Complex64) -> Option<&ChargedLaurent> {
        self.poles.iter().find(|p| (p.location - s0).norm() < LOCATION_TOLERANCE)
    }

    /// Sum of every declared polar part at s.
    pub fn polar_part(&self, s: Complex64) -> Complex64 {
        self.poles.iter().map(|p| p.polar_value(s, ChargeSelector::Total)).sum()
    }

    /// Distance from s to the nearest declared pole other than one at s itself.
    pub fn distance_to_other_poles(&self, s: Complex64) -> f64 {
        self.poles
            .iter()
            .map(|p| (p.location - s).norm())
            .filter(|d| *d >= LOCATION_TOLERANCE)
            .fold(f64::INFINITY, f64::min)
    }

    fn sampling_radius(&self, s0: Complex64) -> f64 {
        let mut r = DEFAULT_CIRCLE_RADIUS.min(0.4 * self.distance_to_other_poles(s0));
        let edge = self.strip.distance_to_edge(s0);
        if edge > 0.0 && edge.is_finite() {
            r = r.min(0.9 * edge);
        }
        r
    }

    /// Taylor coefficients r_0..r_{n−1} of the regular part at s₀ (the
    /// function minus its own polar part there). Stored data is used when
    /// long enough, otherwise circle sampling.
    pub fn regular_coefficients(&self, s0: Complex64, n: usize) -> Vec<Complex64> {
        let pole = self.pole_at(s0);
        if let Some(p) = pole {
            if p.regular.len() >= n {
                return p.regular[..n].to_vec();
            }
        }
        if n == 0 {
            return Vec::new();
        }
        let r = self.sampling_radius(s0);
        let samples: Vec<(Complex64, Complex64)> = (0..CIRCLE_NODES)
            .map(|k| {
                let e = Complex64::from_polar(r, 2.0 * PI * k as f64 / CIRCLE_NODES as f64);
                let s = s0 + e;
                let mut v = self.eval(s);
                if let Some(p) = pole {
                    v -= p.polar_value(s, ChargeSelector::Total);
                }
                (e, v)
            })
            .collect();
        (0..n)
            .map(|j| {
                let acc: Complex64 = samples.iter().map(|(e, v)| v * e.powi(-(j as i32))).sum();
                acc / CIRCLE_NODES as f64
            })
            .collect()
    }

    /// Stored residue of the selected charge; zero at non-poles.
    pub fn residue(&self, s0: Complex64, sel: ChargeSelector) -> Complex64 {
        self.pole_at(s0).map_or(Complex64::new(0.0, 0.0), |p| p.residue(sel))
    }

    /// Residue from a trapezoid contour integral on a circle around s₀.
    pub fn numerical_residue(&self, s0: Complex64, radius: f64) -> Complex64 {
        circle_coefficient(self, s0, radius, -1, 256)
    }

    /// Samples h(σ+it); points within `exclusion` of a pole are flagged.
    pub fn eval_vertical(
        &self,
        sigma: f64,
        t_grid: &[f64],
        exclusion: f64,
    ) -> Vec<Result<Complex64, MeromorphicError>> {
        t_grid
            .iter()
            .map(|&t| {
                let s = Complex64::new(sigma, t);
                if !self.strip.contains(sigma) {
                    return Err(MeromorphicError::OutsideStrip { sigma });
                }
                if let Some(p) = self.poles.iter().find(|p| (p.location - s).norm() < exclusion) {
                    return Err(MeromorphicError::PoleProximity { at: s, pole: p.location });
                }
                Ok(self.eval(s))
            })
            .collect()
    }
}

/// Laurent coefficient of order `order` at s₀ by circle sampling.
pub fn circle_coefficient(
    h: &ChargedMeromorphicFunction,
    s0: Complex64,
    radius: f64,
    order: i32,
    nodes: usize,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let e = Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
        acc += h.eval(s0 + e) * e.powi(-order);
    }
    acc / nodes as f64
}
