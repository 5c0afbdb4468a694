//! Cut-offs localizing an exponent term at one end of ℝ×₊.
//!
//! The smooth carrier is η_k(x) = ½ erfc(k log x) at zero and 1 − η_k at
//! infinity. Its Mellin transform is closed form,
//! ∫ η_k(x) x^{−z} d×x = −e^{z²/4k²}/z for Re z < 0, which keeps exact
//! polar parts and gives Gaussian decay on vertical lines.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    /// Indicator of (0, 1] or (1, ∞).
    Sharp,
    /// erfc cut-off with steepness k.
    Smooth(f64),
}

impl Carrier {
    pub const DEFAULT_SMOOTH: Carrier = Carrier::Smooth(1.0);

    /// Carrier weight at u = log x.
    pub fn weight(self, side: Side, u: f64) -> f64 {
        match (self, side) {
            (Carrier::Sharp, Side::Zero) => f64::from(u <= 0.0),
            (Carrier::Sharp, Side::Infinity) => f64::from(u > 0.0),
            (Carrier::Smooth(k), Side::Zero) => 0.5 * erfc(k * u),
            (Carrier::Smooth(k), Side::Infinity) => 0.5 * erfc(-k * u),
        }
    }

    /// 1 − weight, computed without cancellation.
    pub fn complement(self, side: Side, u: f64) -> f64 {
        match (self, side) {
            (Carrier::Sharp, Side::Zero) => f64::from(u > 0.0),
            (Carrier::Sharp, Side::Infinity) => f64::from(u <= 0.0),
            (Carrier::Smooth(k), Side::Zero) => 0.5 * erfc(-k * u),
            (Carrier::Smooth(k), Side::Infinity) => 0.5 * erfc(k * u),
        }
    }

    /// d(weight)/du; zero for sharp carriers away from u = 0.
    pub fn weight_derivative(self, side: Side, u: f64) -> f64 {
        match self {
            Carrier::Sharp => 0.0,
            Carrier::Smooth(k) => {
                let g = k / std::f64::consts::PI.sqrt() * (-(k * u) * (k * u)).exp();
                match side {
                    Side::Zero => -g,
                    Side::Infinity => g,
                }
            }
        }
    }

    pub fn is_sharp(self) -> bool {
        matches!(self, Carrier::Sharp)
    }

    /// Mellin transform of the carrier times (log x)^m, as a function of
    /// z = s − s′: (−d/dz)^m of ∓1/z (sharp) or ∓e^{az²}/z (smooth),
    /// with − on the zero side.
    pub fn transform(self, side: Side, m: usize, z: Complex64) -> Complex64 {
        let sign = match side {
            Side::Zero => -1.0,
            Side::Infinity => 1.0,
        };
        match self {
            Carrier::Sharp => {
                // (−d/dz)^m (1/z) = m!/z^{m+1}
                sign * factorial(m) / z.powi(m as i32 + 1)
            }
            Carrier::Smooth(k) => {
                let a = 0.25 / (k * k);
                // d^j/dz^j e^{az²} = p_j(z) e^{az²}
                let polys = gaussian_derivative_polys(a, m);
                let mut acc = Complex64::new(0.0, 0.0);
                let mut binom = 1.0;
                for i in 0..=m {
                    if i > 0 {
                        binom = binom * (m - i + 1) as f64 / i as f64;
                    }
                    // d^i/dz^i (1/z) = (−1)^i i!/z^{i+1}
                    let inv = if i % 2 == 0 { 1.0 } else { -1.0 } * factorial(i) / z.powi(i as i32 + 1);
                    acc += binom * eval_poly(&polys[m - i], z) * inv;
                }
                let msign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * msign * (a * z * z).exp() * acc
            }
        }
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn gaussian_derivative_polys(a: f64, m: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0]];
    for j in 0..m {
        let p = &out[j];
        let mut next = vec![0.0; p.len() + 1];
        // p' + 2az p
        for (i, c) in p.iter().enumerate() {
            if i > 0 {
                next[i - 1] += c * i as f64;
            }
            next[i + 1] += 2.0 * a * c;
        }
        out.push(next);
    }
    out
}

fn eval_poly(p: &[f64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}
