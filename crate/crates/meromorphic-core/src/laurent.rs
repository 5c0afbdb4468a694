//! Charged Laurent data at a single point.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Charge {
    Plus,
    Minus,
}

impl Charge {
    pub fn swapped(self) -> Self {
        match self {
            Charge::Plus => Charge::Minus,
            Charge::Minus => Charge::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChargeSelector {
    Plus,
    Minus,
    Total,
}

impl From<Charge> for ChargeSelector {
    fn from(c: Charge) -> Self {
        match c {
            Charge::Plus => ChargeSelector::Plus,
            Charge::Minus => ChargeSelector::Minus,
        }
    }
}

/// Laurent data at `location`.
///
/// `plus[k]` and `minus[k]` are the coefficients of (s − s₀)^{−(k+1)};
/// `regular[j]` (optional) is the coefficient of (s − s₀)^j.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargedLaurent {
    pub location: Complex64,
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
    pub regular: Vec<Complex64>,
}

impl ChargedLaurent {
    pub fn new(location: Complex64) -> Self {
        Self { location, plus: Vec::new(), minus: Vec::new(), regular: Vec::new() }
    }

    /// A single polar coefficient `coeff·(s − s₀)^{−order}`.
    pub fn single(location: Complex64, order: usize, coeff: Complex64, charge: Charge) -> Self {
        assert!(order >= 1, "polar order must be at least 1");
        let mut l = Self::new(location);
        let mut v = vec![Complex64::new(0.0, 0.0); order];
        v[order - 1] = coeff;
        *l.charged_mut(charge) = v;
        l
    }

    pub fn charged(&self, charge: Charge) -> &[Complex64] {
        match charge {
            Charge::Plus => &self.plus,
            Charge::Minus => &self.minus,
        }
    }

    pub fn charged_mut(&mut self, charge: Charge) -> &mut Vec<Complex64> {
        match charge {
            Charge::Plus => &mut self.plus,
            Charge::Minus => &mut self.minus,
        }
    }

    /// Polar depth of one charge, ignoring trailing zero coefficients.
    pub fn depth(&self, charge: Charge) -> usize {
        depth(self.charged(charge))
    }

    pub fn max_depth(&self) -> usize {
        self.depth(Charge::Plus).max(self.depth(Charge::Minus))
    }

    pub fn has(&self, charge: Charge) -> bool {
        self.depth(charge) > 0
    }

    /// Coefficient of (s − s₀)^{order} for a negative `order`.
    pub fn coefficient(&self, order: i32, sel: ChargeSelector) -> Complex64 {
        assert!(order <= -1, "polar coefficients have negative order");
        let k = (-order - 1) as usize;
        let get = |v: &[Complex64]| v.get(k).copied().unwrap_or_default();
        match sel {
            ChargeSelector::Plus => get(&self.plus),
            ChargeSelector::Minus => get(&self.minus),
            ChargeSelector::Total => get(&self.plus) + get(&self.minus),
        }
    }

    pub fn residue(&self, sel: ChargeSelector) -> Complex64 {
        self.coefficient(-1, sel)
    }

    /// Total polar part coefficients (plus + minus), indexed like `plus`.
    pub fn total(&self) -> Vec<Complex64> {
        let n = self.plus.len().max(self.minus.len());
        (0..n)
            .map(|k| {
                self.plus.get(k).copied().unwrap_or_default()
                    + self.minus.get(k).copied().unwrap_or_default()
            })
            .collect()
    }

    /// Value of the selected polar part at s.
    pub fn polar_value(&self, s: Complex64, sel: ChargeSelector) -> Complex64 {
        let z = s - self.location;
        let eval = |v: &[Complex64]| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut zp = Complex64::new(1.0, 0.0);
            for a in v {
                zp /= z;
                acc += a * zp;
            }
            acc
        };
        match sel {
            ChargeSelector::Plus => eval(&self.plus),
            ChargeSelector::Minus => eval(&self.minus),
            ChargeSelector::Total => eval(&self.plus) + eval(&self.minus),
        }
    }

    /// Residue of F(s)·x^s at the pole, for the selected polar part:
    /// Σ_m a_{−m} x^{s₀} (log x)^{m−1}/(m−1)!.
    pub fn residue_against_power(&self, sel: ChargeSelector, x: f64) -> Complex64 {
        let coeffs = match sel {
            ChargeSelector::Plus => self.plus.clone(),
            ChargeSelector::Minus => self.minus.clone(),
            ChargeSelector::Total => self.total(),
        };
        let l = x.ln();
        let xs = (self.location * l).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut term = 1.0;
        for (k, a) in coeffs.iter().enumerate() {
            if k > 0 {
                term *= l / k as f64;
            }
            acc += a * term;
        }
        acc * xs
    }
}

pub(crate) fn depth(v: &[Complex64]) -> usize {
    v.iter().rposition(|a| *a != Complex64::new(0.0, 0.0)).map_or(0, |i| i + 1)
}
