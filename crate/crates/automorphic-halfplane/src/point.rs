//! Points of the upper half-plane and reduction to the standard
//! fundamental domain F = {|z| ≥ 1, |x| ≤ ½}.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

/// Integer matrix (a, b, c, d) of determinant 1.
pub type Sl2 = [i64; 4];

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "point must lie in the upper half-plane");
        Self { x, y }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// (az + b)/(cz + d).
    pub fn act(self, g: Sl2) -> Self {
        let [a, b, c, d] = g.map(|v| v as f64);
        let z = self.to_complex();
        let den = c * z + d;
        let y = self.y / den.norm_sqr();
        let w = (a * z + b) / den;
        Self { x: w.re, y }
    }

    pub fn translate(self, n: f64) -> Self {
        Self { x: self.x + n, y: self.y }
    }

    /// z ↦ −1/z.
    pub fn invert(self) -> Self {
        let r = self.x * self.x + self.y * self.y;
        Self { x: -self.x / r, y: self.y / r }
    }

    /// Representative in F and the matrix γ with γz in F.
    pub fn reduce(self) -> (Self, Sl2) {
        let mut z = self;
        let mut g: Sl2 = [1, 0, 0, 1];
        for _ in 0..10_000 {
            let n = z.x.round();
            if n != 0.0 {
                z.x -= n;
                let n = n as i64;
                g = [g[0] - n * g[2], g[1] - n * g[3], g[2], g[3]];
            }
            if z.x * z.x + z.y * z.y < 1.0 - 1e-14 {
                z = z.invert();
                g = [-g[2], -g[3], g[0], g[1]];
            } else {
                break;
            }
        }
        (z, g)
    }

    pub fn in_fundamental_domain(self) -> bool {
        self.x.abs() <= 0.5 + 1e-12 && self.x * self.x + self.y * self.y >= 1.0 - 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_lands_in_domain() {
        for &(x, y) in &[(0.3, 0.01), (-7.2, 0.3), (0.49, 0.9), (2.0, 5.0), (0.1234, 0.0007)] {
            let z = HalfPlanePoint::new(x, y);
            let (w, g) = z.reduce();
            assert!(w.in_fundamental_domain(), "{w:?}");
            let v = z.act(g);
            assert!((v.x - w.x).abs() < 1e-9 && (v.y - w.y).abs() < 1e-9 * w.y.max(1.0));
            assert_eq!(g[0] * g[3] - g[1] * g[2], 1);
        }
    }
}
