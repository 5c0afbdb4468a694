//! Laurent coefficients TF₋₁ and TF₀ of the non-invariant trace formula for
//! PGL₂ at level one, in the spherical scalar instantiation.
//!
//! Test functions are described by their spherical transform h; the
//! abscissa transform g and the point-pair kernel k are derived from it.

pub mod error;
pub mod geometric;
pub mod kernel;
pub mod laurent;
pub mod report;
mod ser;
pub mod spectral;
pub mod spherical;
pub mod table;

pub use error::TraceError;
pub use geometric::{
    geometric_side_of, hyperbolic_ratio, identity_term, orbital_integral, tate_zeta, tate_zeta_term, tf_minus1_geometric,
    tf_minus1_geometric_of, unipotent_profile, weight_v, weighted_orbital_integral, ClassTerm, GeometricMinus1,
    GeometricSide, GeometricTermConfig, TateZetaTerm, N_MEASURE,
};
pub use kernel::{kernel_constant_terms, kernel_relations_at, KernelRelationCheck};
pub use laurent::{two_term_laurent_kernel, two_term_laurent_kernel_of, two_term_laurent_model, FitConfig, TruncationFit, TwoTermLaurent};
pub use report::{tf_report, TfReport};
pub use spectral::{
    continuous_term_with, cuspidal_display, spectral_side, tf_minus1_spectral, tf_minus1_spectral_on, ResidualTerm,
    SpectralSide,
};
pub use spherical::{gaussian, polynomial_gaussian, spherical_from_g, spherical_from_h, Member, Provenance, SphericalTestFunction};
