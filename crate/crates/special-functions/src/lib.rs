//! Special functions for the level-1 automorphic layer: complex Γ, ζ, the
//! completed ξ, the scattering scalar c(s) = ξ(s)/ξ(s+1), K-Bessel functions
//! of complex order, divisor sums, and the quadrature rules the other crates
//! build on.

pub mod arith;
pub mod bessel;
pub mod error;
pub mod gamma;
pub mod hc;
pub mod quad;
pub mod scattering;
pub mod zeta;

pub use arith::{divisor_sigma, euler_phi, gcd};
pub use bessel::{kbessel, kbessel_imag_order, kbessel_real_order, KValue};
pub use error::SpecialError;
pub use hc::{hc_bound_check, HcGrid, HcReport};
pub use gamma::{gamma, ln_gamma, rgamma, EULER_GAMMA};
pub use scattering::{c_log_derivative, c_log_derivative_via_xi, intertwining_c, C_RESIDUE_AT_ONE};
pub use zeta::{xi, xi_reciprocal, zeta};

#[cfg(feature = "fault-injection")]
pub use scattering::fault;
