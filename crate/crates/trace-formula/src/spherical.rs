//! Spherical test functions as the triple (h, g, k).
//!
//! h(s) is the scalar by which Φ acts on y^{(1+s)/2}; g is its Fourier
//! partner, h(s) = ∫ g(u) e^{su} du; k is the point-pair kernel against
//! dμ = dx dy/y². Kernels are stored as functions of σ = half the
//! hyperbolic distance, so k(u) with u = sinh²σ.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use special_functions::quad::composite_nodes;

use crate::error::TraceError;
use crate::table::ChebTable;

pub type SpectralEvaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

const PANEL: f64 = 0.25;
const ORDER: usize = 16;
const QUAD_ORDER: usize = 20;
const H_FLOOR: f64 = 1e-17;
const G_FLOOR: f64 = 1e-15;
const SCAN_T_END: f64 = 400.0;
const SCAN_U_END: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Member {
    H,
    G,
    K,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub supplied: Member,
    pub derived: Vec<Member>,
}

#[derive(Clone)]
pub struct SphericalTestFunction {
    h: SpectralEvaluator,
    g: ChebTable,
    dg: ChebTable,
    k: ChebTable,
    /// |h(it)| is below 1e-17 of its maximum beyond this.
    pub t_max: f64,
    /// g and k vanish to working precision beyond this.
    pub u_max: f64,
    pub provenance: Provenance,
}

impl std::fmt::Debug for SphericalTestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SphericalTestFunction")
            .field("t_max", &self.t_max)
            .field("u_max", &self.u_max)
            .field("provenance", &self.provenance)
            .finish()
    }
}

fn breaks(end: f64, width: f64) -> Vec<f64> {
    let n = (end / width).ceil().max(1.0) as usize;
    (0..=n).map(|j| end * j as f64 / n as f64).collect()
}

fn check_even(h: &(dyn Fn(Complex64) -> Complex64 + Send + Sync)) -> Result<(), TraceError> {
    for s in [Complex64::new(0.3, 0.7), Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.5), Complex64::new(0.5, 4.0)] {
        let a = h(s);
        let defect = (a - h(-s)).norm();
        if !(defect <= 1e-10 * (1.0 + a.norm())) {
            return Err(TraceError::NotEven { at: s, defect });
        }
    }
    Ok(())
}

/// Last grid point where |f| exceeds `floor` times its maximum, or `None`
/// for the zero function.
fn support_end(grid: &[f64], values: &[f64], floor: f64) -> Option<f64> {
    let max = values.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return None;
    }
    let last = values.iter().rposition(|&v| v > floor * max).unwrap_or(0);
    Some(grid[last])
}

/// k̃(σ) = −(1/4π) ∫_σ^∞ g′(τ)/√(sinh²τ − sinh²σ) dτ, written through
/// sinh τ = sinh σ · cosh η so the integrand is smooth.
fn abel_inverse(dg: &ChebTable, u_max: f64, sigma: f64) -> Complex64 {
    let scale = -1.0 / (4.0 * PI);
    if sigma >= u_max {
        return Complex64::new(0.0, 0.0);
    }
    if sigma == 0.0 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (tau, w) in composite_nodes(&breaks(u_max, PANEL), QUAD_ORDER) {
            acc += dg.eval(tau) / tau.sinh() * w;
        }
        return acc * scale;
    }
    let ss = sigma.sinh();
    let eta_max = (u_max.sinh() / ss).acosh();
    let mut acc = Complex64::new(0.0, 0.0);
    for (eta, w) in composite_nodes(&breaks(eta_max, PANEL), QUAD_ORDER) {
        let tau = (ss * eta.cosh()).asinh();
        acc += dg.eval(tau) / tau.cosh() * w;
    }
    acc * scale
}

/// g(σ) = 4 ∫_σ^∞ k̃(τ) sinh 2τ /√(sinh²τ − sinh²σ) dτ.
fn abel_forward(k: &ChebTable, u_max: f64, sigma: f64) -> Complex64 {
    let sigma = sigma.abs();
    if sigma >= u_max {
        return Complex64::new(0.0, 0.0);
    }
    if sigma == 0.0 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (tau, w) in composite_nodes(&breaks(u_max, PANEL), QUAD_ORDER) {
            acc += k.eval(tau) * (tau.cosh() * w);
        }
        return acc * 8.0;
    }
    let ss = sigma.sinh();
    let eta_max = (u_max.sinh() / ss).acosh();
    let mut acc = Complex64::new(0.0, 0.0);
    for (eta, w) in composite_nodes(&breaks(eta_max, PANEL), QUAD_ORDER) {
        let sh = ss * eta.cosh();
        acc += k.eval(sh.asinh()) * (sh * w);
    }
    acc * 8.0
}

impl SphericalTestFunction {
    pub fn h(&self, s: Complex64) -> Complex64 {
        (self.h)(s)
    }

    pub fn h_on_line(&self, t: f64) -> Complex64 {
        self.h(Complex64::new(0.0, t))
    }

    pub fn evaluator(&self) -> SpectralEvaluator {
        self.h.clone()
    }

    pub fn g(&self, u: f64) -> Complex64 {
        self.g.eval(u.abs())
    }

    pub fn g_prime(&self, u: f64) -> Complex64 {
        let d = self.dg.eval(u.abs());
        if u < 0.0 {
            -d
        } else {
            d
        }
    }

    /// Kernel at half the hyperbolic distance.
    pub fn k_half_distance(&self, sigma: f64) -> Complex64 {
        self.k.eval(sigma.abs())
    }

    pub fn k_distance(&self, rho: f64) -> Complex64 {
        self.k_half_distance(0.5 * rho)
    }

    /// k(u) with u = |z − w|²/(4 Im z Im w).
    pub fn k_point_pair(&self, u: f64) -> Complex64 {
        self.k_half_distance(u.max(0.0).sqrt().asinh())
    }

    pub fn k0(&self) -> Complex64 {
        self.k.eval(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.g.max_norm() == 0.0
    }

    /// h̃(it) = ∫ g(u) e^{itu} du from the stored g.
    pub fn h_from_g(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (u, w) in composite_nodes(&breaks(self.u_max, PANEL), QUAD_ORDER) {
            acc += self.g.eval(u) * ((t * u).cos() * w);
        }
        acc * 2.0
    }

    /// g recovered from the stored kernel by the forward Abel transform.
    pub fn g_from_k(&self, u: f64) -> Complex64 {
        abel_forward(&self.k, self.u_max, u)
    }

    fn with_g_tables(
        h: SpectralEvaluator,
        g: ChebTable,
        dg: ChebTable,
        t_max: f64,
        u_max: f64,
        provenance: Provenance,
    ) -> Self {
        let panels = (u_max / PANEL).ceil().max(1.0) as usize;
        let k = ChebTable::from_fn(u_max, panels, ORDER, |sigma| abel_inverse(&dg, u_max, sigma));
        Self { h, g, dg, k, t_max, u_max, provenance }
    }

    fn zero_from(h: SpectralEvaluator, supplied: Member) -> Self {
        let derived = [Member::H, Member::G, Member::K].into_iter().filter(|m| *m != supplied).collect();
        Self {
            h,
            g: ChebTable::zero(1.0),
            dg: ChebTable::zero(1.0),
            k: ChebTable::zero(1.0),
            t_max: 1.0,
            u_max: 1.0,
            provenance: Provenance { supplied, derived },
        }
    }

    /// h·c for a constant c.
    pub fn scaled(&self, c: Complex64) -> Result<Self, TraceError> {
        let h = self.h.clone();
        spherical_from_h(move |s| h(s) * c)
    }

    /// The test function whose transform is h₁h₂ (convolution Φ₁^∨ ⋆ Φ₂).
    pub fn convolution(&self, other: &Self) -> Result<Self, TraceError> {
        let (a, b) = (self.h.clone(), other.h.clone());
        spherical_from_h(move |s| a(s) * b(s))
    }
}

/// Builds the triple from an even spherical transform.
pub fn spherical_from_h(h: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Result<SphericalTestFunction, TraceError> {
    check_even(&h)?;
    let h: SpectralEvaluator = Arc::new(h);
    let scan: Vec<f64> = (0..=(SCAN_T_END * 4.0) as usize).map(|j| 0.25 * j as f64).collect();
    let mags: Vec<f64> = scan.iter().map(|&t| h(Complex64::new(0.0, t)).norm()).collect();
    if mags.iter().any(|m| !m.is_finite()) {
        return Err(TraceError::Decay { what: "h", detail: "non-finite value on the unitary line".into() });
    }
    let Some(last) = support_end(&scan, &mags, H_FLOOR) else {
        return Ok(SphericalTestFunction::zero_from(h, Member::H));
    };
    if last >= SCAN_T_END - 1.0 {
        return Err(TraceError::Decay {
            what: "h",
            detail: format!("|h(it)| still above {H_FLOOR:e} of its maximum at t = {SCAN_T_END}"),
        });
    }
    let t_max = last + 1.0;
    let t_nodes: Vec<(f64, f64, Complex64)> = composite_nodes(&breaks(t_max, PANEL), QUAD_ORDER)
        .into_iter()
        .map(|(t, w)| (t, w, h(Complex64::new(0.0, t))))
        .collect();
    let g_at = |u: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, w, ht) in &t_nodes {
            acc += ht * ((t * u).cos() * w);
        }
        acc / PI
    };
    let dg_at = |u: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, w, ht) in &t_nodes {
            acc += ht * (-t * (t * u).sin() * w);
        }
        acc / PI
    };
    let uscan: Vec<f64> = (0..=(SCAN_U_END * 4.0) as usize).map(|j| 0.25 * j as f64).collect();
    let gmags: Vec<f64> = uscan.iter().map(|&u| g_at(u).norm()).collect();
    let u_max = (support_end(&uscan, &gmags, G_FLOOR).unwrap_or(0.0) + 0.5).min(SCAN_U_END);
    let panels = (u_max / PANEL).ceil() as usize;
    let g = ChebTable::from_fn(u_max, panels, ORDER, g_at);
    let dg = ChebTable::from_fn(u_max, panels, ORDER, dg_at);
    let provenance = Provenance { supplied: Member::H, derived: vec![Member::G, Member::K] };
    Ok(SphericalTestFunction::with_g_tables(h, g, dg, t_max, u_max, provenance))
}

/// Builds the triple from an even abscissa transform g.
pub fn spherical_from_g(g: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Result<SphericalTestFunction, TraceError> {
    let uscan: Vec<f64> = (0..=(SCAN_U_END * 4.0) as usize).map(|j| 0.25 * j as f64).collect();
    let gmags: Vec<f64> = uscan.iter().map(|&u| g(u).norm()).collect();
    if gmags.iter().any(|m| !m.is_finite()) {
        return Err(TraceError::Decay { what: "g", detail: "non-finite sample".into() });
    }
    let Some(last) = support_end(&uscan, &gmags, G_FLOOR) else {
        return Ok(SphericalTestFunction::zero_from(Arc::new(|_| Complex64::new(0.0, 0.0)), Member::G));
    };
    if last >= SCAN_U_END - 1.0 {
        return Err(TraceError::Decay { what: "g", detail: format!("|g| still significant at u = {SCAN_U_END}") });
    }
    let u_max = last + 0.5;
    let panels = (u_max / PANEL).ceil() as usize;
    let gt = ChebTable::from_fn(u_max, panels, ORDER, &g);
    let dg = gt.derivative();
    let nodes: Vec<(f64, f64, Complex64)> = composite_nodes(&breaks(u_max, PANEL), QUAD_ORDER)
        .into_iter()
        .map(|(u, w)| (u, w, gt.eval(u)))
        .collect();
    let h: SpectralEvaluator = Arc::new(move |s: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(u, w, gu) in &nodes {
            acc += gu * (s * u).cosh() * w;
        }
        acc * 2.0
    });
    let tmags: Vec<f64> = (0..=200).map(|j| h(Complex64::new(0.0, 0.5 * j as f64)).norm()).collect();
    let tgrid: Vec<f64> = (0..=200).map(|j| 0.5 * j as f64).collect();
    let t_max = support_end(&tgrid, &tmags, 1e-13).unwrap_or(0.0) + 1.0;
    let provenance = Provenance { supplied: Member::G, derived: vec![Member::H, Member::K] };
    Ok(SphericalTestFunction::with_g_tables(h, gt, dg, t_max, u_max, provenance))
}

/// h(s) = e^{w²s²}, so h(it) = e^{−w²t²}.
pub fn gaussian(width: f64) -> Result<SphericalTestFunction, TraceError> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(TraceError::Domain(format!("gaussian width must be positive, got {width}")));
    }
    let w2 = width * width;
    spherical_from_h(move |s| (s * s * w2).exp())
}

/// h(s) = (1 − s²)·e^{w²s²}.
pub fn polynomial_gaussian(width: f64) -> Result<SphericalTestFunction, TraceError> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(TraceError::Domain(format!("gaussian width must be positive, got {width}")));
    }
    let w2 = width * width;
    spherical_from_h(move |s| (1.0 - s * s) * (s * s * w2).exp())
}
