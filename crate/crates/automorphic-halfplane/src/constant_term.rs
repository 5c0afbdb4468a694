//! Constant terms along horocycles and truncation.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::automorphic::AutomorphicFunction;
use crate::point::HalfPlanePoint;

const START_NODES: usize = 64;
const MAX_NODES: usize = 1 << 15;

/// ∫₀¹ φ(x + iy) dx by the periodic trapezoid rule with m nodes.
pub fn constant_term_with(phi: &AutomorphicFunction, y: f64, m: usize) -> Complex64 {
    let h = 1.0 / m as f64;
    let sum: Complex64 = (0..m)
        .into_par_iter()
        .map(|j| phi.eval(HalfPlanePoint::new(j as f64 * h, y)))
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    sum * h
}

/// ∫₀¹ φ(x + iy) dx, doubling the trapezoid rule until two successive
/// values agree to 1e-13 relative.
pub fn constant_term(phi: &AutomorphicFunction, y: f64) -> Complex64 {
    let mut m = START_NODES;
    let mut prev = constant_term_with(phi, y, m);
    while m < MAX_NODES {
        // the doubled rule reuses the previous nodes
        let h = 1.0 / (2 * m) as f64;
        let odd: Complex64 = (0..m)
            .into_par_iter()
            .map(|j| phi.eval(HalfPlanePoint::new((2 * j + 1) as f64 * h, y)))
            .collect::<Vec<_>>()
            .into_iter()
            .sum();
        let next = 0.5 * prev + odd * h;
        m *= 2;
        let done = (next - prev).norm() <= 1e-13 * next.norm().max(1.0);
        prev = next;
        if done {
            break;
        }
    }
    prev
}

/// ∧ᵀφ(z): φ(z) minus its constant term at the height of the reduced
/// point whenever that height exceeds e^{2T}.
pub fn truncate(phi: &AutomorphicFunction, t: f64, z: HalfPlanePoint) -> Complex64 {
    let w = z.reduce().0;
    let v = phi.eval(w);
    if w.y > (2.0 * t).exp() {
        v - constant_term(phi, w.y)
    } else {
        v
    }
}
