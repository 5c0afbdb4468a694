//! Harmonic analysis on the multiplicative group ℝ×₊ for asymptotically
//! finite functions: Mellin transforms with charged poles, inversion with
//! residue corrections, regularized integrals and the Plancherel formula.

pub mod aff;
pub mod carrier;
pub mod contour;
pub mod corpus;
pub mod error;
pub mod mellin;
pub mod profile;

pub use aff::{AsymptoticallyFiniteFunction, Core, ExponentTerm};
pub use carrier::{Carrier, Side};
pub use contour::{
    almost_l2_plancherel, inversion_breakdown, mellin_inverse, mellin_inverse_grid, PreparedContour, plancherel_breakdown, plancherel_inner_product,
    plancherel_integrand, regularized_inner_product_direct, regularized_integral, vertical_integral, ContourConfig,
    InversionBreakdown, Placement, ResidueContribution,
};
pub use corpus::{default_corpus, parse_corpus, CoreSpec, FunctionSpec, TermSpec};
pub use error::TorusError;
pub use mellin::{check_core_tail, core_mellin, mellin, term_poles, CoreQuadrature};
pub use profile::{pw_decay_profile, PwProfile};

/// Mellin transform of (x d/dx − s₀)f at s, minus (s − s₀)f̌(s); zero up
/// to quadrature error for smooth carriers.
pub fn mellin_derivative_defect(
    f: &AsymptoticallyFiniteFunction,
    s0: num_complex::Complex64,
    s: num_complex::Complex64,
) -> Result<num_complex::Complex64, TorusError> {
    let g = f.euler_derivative_shifted(s0)?;
    Ok(mellin(&g)?.eval(s) - (s - s0) * mellin(f)?.eval(s))
}
