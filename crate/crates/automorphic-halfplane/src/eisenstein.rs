//! The level-1 Eisenstein series E(z, s) = y^{(1+s)/2} + c(s)y^{(1−s)/2} + …
//! through its Fourier expansion
//!
//! E(z, s) = y^{(1+s)/2} + c(s)y^{(1−s)/2}
//!         + (4/ξ(1+s))√y Σ_{n≥1} n^{s/2}σ_{−s}(n) K_{s/2}(2πny) cos(2πnx),
//!
//! with ξ(s) = π^{−s/2}Γ(s/2)ζ(s) and c(s) = ξ(s)/ξ(1+s). The lattice sum
//! is available for Re s > 1.

use std::f64::consts::PI;

use num_complex::Complex64;
use special_functions::quad::GaussLegendre;
use special_functions::{divisor_sigma, gamma, intertwining_c, kbessel, xi_reciprocal, zeta, SpecialError};

use crate::automorphic::{Asymptote, AutomorphicFunction, Source};
use crate::error::AutomorphicError;
use crate::point::HalfPlanePoint;

/// Fourier terms stop once 2πny exceeds this plus π|Im s|/4.
const BESSEL_CUTOFF: f64 = 45.0;

/// E(x + iy, s) at one height: constant term plus cosine coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct EisensteinRow {
    pub y: f64,
    pub constant: Complex64,
    /// coeffs[n − 1] multiplies cos(2πnx)
    pub coeffs: Vec<Complex64>,
}

impl EisensteinRow {
    pub fn oscillating(&self, x: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * (2.0 * PI * (k + 1) as f64 * x).cos())
            .sum()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.constant + self.oscillating(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinSeries {
    s: Complex64,
    c: Complex64,
    /// 4/ξ(1+s)
    scale: Complex64,
}

impl EisensteinSeries {
    pub fn new(s: Complex64) -> Result<Self, AutomorphicError> {
        if (s - 1.0).norm() < 1e-12 {
            return Err(SpecialError::Pole { at: s }.into());
        }
        let c = intertwining_c(s)?;
        Ok(Self { s, c, scale: 4.0 * xi_reciprocal(1.0 + s) })
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    /// c(s)
    pub fn scattering(&self) -> Complex64 {
        self.c
    }

    /// y^{(1+s)/2} + c(s)y^{(1−s)/2}
    pub fn constant_term(&self, y: f64) -> Complex64 {
        let y = Complex64::new(y, 0.0);
        y.powc((1.0 + self.s) * 0.5) + self.c * y.powc((1.0 - self.s) * 0.5)
    }

    /// Number of Fourier terms kept at height y.
    pub fn terms_at(&self, y: f64) -> usize {
        ((BESSEL_CUTOFF + PI * self.s.im.abs() / 4.0) / (2.0 * PI * y)).ceil() as usize
    }

    pub fn row(&self, y: f64) -> EisensteinRow {
        let constant = self.constant_term(y);
        if self.scale.norm() == 0.0 {
            return EisensteinRow { y, constant, coeffs: Vec::new() };
        }
        let nu = self.s * 0.5;
        let pre = self.scale * y.sqrt();
        let coeffs = (1..=self.terms_at(y))
            .map(|n| {
                let k = kbessel(nu, 2.0 * PI * n as f64 * y);
                if k.underflow {
                    return Complex64::new(0.0, 0.0);
                }
                let nf = Complex64::new(n as f64, 0.0);
                pre * nf.powc(nu) * divisor_sigma(n as u64, -self.s) * k.value
            })
            .collect();
        EisensteinRow { y, constant, coeffs }
    }

    /// Fourier series at z itself, without reduction.
    pub fn eval_unreduced(&self, z: HalfPlanePoint) -> Complex64 {
        self.row(z.y).eval(z.x)
    }

    pub fn eval(&self, z: HalfPlanePoint) -> Complex64 {
        self.eval_unreduced(z.reduce().0)
    }

    /// ∧ᵀE(z): the constant term is removed above height e^{2T} in F.
    pub fn truncated(&self, t: f64, z: HalfPlanePoint) -> Complex64 {
        let w = z.reduce().0;
        let row = self.row(w.y);
        if w.y > (2.0 * t).exp() {
            row.oscillating(w.x)
        } else {
            row.eval(w.x)
        }
    }

    pub fn automorphic(&self) -> AutomorphicFunction {
        let me = *self;
        let asymptotes = vec![
            Asymptote { exponent: self.s, coefficient: Complex64::new(1.0, 0.0) },
            Asymptote { exponent: -self.s, coefficient: self.c },
        ];
        AutomorphicFunction::new(move |z| me.eval(z), asymptotes, 2.0, Source::Eisenstein(self.s))
    }
}

/// E(z, s) by its Fourier expansion.
pub fn eisenstein(s: Complex64, z: HalfPlanePoint) -> Result<Complex64, AutomorphicError> {
    Ok(EisensteinSeries::new(s)?.eval(z))
}

/// E(z, s) = (1/2ζ(2w)) Σ'_{(m,n)} y^w/|mz + n|^{2w}, w = (1+s)/2, for
/// Re s > 1.
///
/// Rows m ≤ `m_direct` are summed over `2n_half + 1` values of n with
/// both n-tails closed by midpoint integrals. Rows beyond contribute
/// their n-integral √π Γ(w−½)/Γ(w)·(my)^{1−2w}.
pub fn eisenstein_lattice(
    s: Complex64,
    z: HalfPlanePoint,
    m_direct: usize,
    n_half: usize,
) -> Result<Complex64, AutomorphicError> {
    if !(s.re > 1.0) {
        return Err(AutomorphicError::OutsideConvergence { s });
    }
    let w = (1.0 + s) * 0.5;
    let gl = GaussLegendre::cached(20);
    let power = |r2: f64| (-w * r2.ln()).exp();
    // ∫_a^∞ (u² + C²)^{−w} du with u = a/v
    let tail = |a: f64, c2: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..8 {
            let (lo, hi) = (p as f64 / 8.0, (p + 1) as f64 / 8.0);
            for (v, wt) in gl.mapped(lo, hi) {
                let base = a * a + c2 * v * v;
                acc += (Complex64::new(v, 0.0).powc(2.0 * w - 2.0)) * power(base) * wt;
            }
        }
        acc * a
    };
    let mut rows = Complex64::new(0.0, 0.0);
    for m in 1..=m_direct {
        let mf = m as f64;
        let c2 = mf * mf * z.y * z.y;
        let center = (-mf * z.x).round();
        let shift = center + mf * z.x;
        let mut row = Complex64::new(0.0, 0.0);
        for j in -(n_half as i64)..=(n_half as i64) {
            let u = j as f64 + shift;
            row += power(u * u + c2);
        }
        let half = n_half as f64 + 0.5;
        row += tail(half + shift, c2) + tail(half - shift, c2);
        rows += row;
    }
    let ratio = PI.sqrt() * gamma(w - 0.5) / gamma(w);
    let p = 2.0 * w - 1.0;
    let far = m_direct + 20_000;
    let mut h: Complex64 = ((m_direct + 1)..=far).map(|m| (-p * (m as f64).ln()).exp()).sum();
    h += (-(p - 1.0) * (far as f64 + 0.5).ln()).exp() / (p - 1.0);
    rows += ratio * (-p * z.y.ln()).exp() * h;
    let yw = (w * z.y.ln()).exp();
    Ok(yw + yw / zeta(2.0 * w)? * rows)
}
