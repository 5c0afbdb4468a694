//! Quadrature kernels shared by the numerical layers.
//!
//! Everything here integrates either `f64` or `Complex64` valued functions;
//! the [`Scalar`] trait is the small amount of algebra that needs.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

/// Values a quadrature rule can accumulate.
pub trait Scalar: Copy + Add<Output = Self> + Mul<f64, Output = Self> + Send + Sync {
    fn zero() -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the n-point rule by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Shared instance for a given order.
    pub fn cached(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("quadrature cache poisoned");
        guard.entry(n).or_insert_with(|| Arc::new(GaussLegendre::new(n))).clone()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<T: Scalar>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T {
        let mut acc = T::zero();
        for (x, w) in self.mapped(a, b) {
            acc = acc + f(x) * w;
        }
        acc
    }

    /// Composite rule over `panels` equal sub-intervals.
    pub fn composite<T: Scalar>(&self, a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> T) -> T {
        let h = (b - a) / panels as f64;
        let mut acc = T::zero();
        for p in 0..panels {
            let lo = a + h * p as f64;
            acc = acc + self.integrate(lo, lo + h, &mut f);
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre nodes over a list of breakpoints.
pub fn composite_nodes(breaks: &[f64], order: usize) -> Vec<(f64, f64)> {
    let gl = GaussLegendre::cached(order);
    let mut out = Vec::with_capacity(breaks.len().saturating_sub(1) * order);
    for w in breaks.windows(2) {
        out.extend(gl.mapped(w[0], w[1]));
    }
    out
}

/// Trapezoid rule for a 1-periodic function on [0, 1) with m nodes.
pub fn trapezoid_periodic<T: Scalar>(m: usize, mut f: impl FnMut(f64) -> T) -> T {
    let h = 1.0 / m as f64;
    let mut acc = T::zero();
    for j in 0..m {
        acc = acc + f(j as f64 * h);
    }
    acc * h
}

/// Sinh–sinh double-exponential rule for ∫_ℝ f(t) dt.
///
/// Suited to integrands with algebraic decay; `h` is the step in the
/// transformed variable and `vmax` its cutoff.
pub fn sinh_sinh<T: Scalar>(h: f64, vmax: f64, mut f: impl FnMut(f64) -> T) -> T {
    let n = (vmax / h).ceil() as i64;
    let mut acc = T::zero();
    for j in -n..=n {
        let v = j as f64 * h;
        let s = 0.5 * PI * v.sinh();
        let t = s.sinh();
        let dt = 0.5 * PI * v.cosh() * s.cosh();
        if !t.is_finite() || !dt.is_finite() {
            continue;
        }
        acc = acc + f(t) * (dt * h);
    }
    acc
}
