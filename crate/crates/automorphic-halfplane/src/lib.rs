//! The modular surface PSL₂(ℤ)\ℍ: pseudo-Eisenstein series and their
//! constant terms, the Radon transform, Eisenstein series, truncation,
//! fundamental-domain quadrature, the Maass–Selberg relation and the
//! rank-one Plancherel decomposition.

pub mod automorphic;
pub mod boundary;
pub mod constant_term;
pub mod domain;
pub mod eisenstein;
pub mod error;
pub mod maass_selberg;
pub mod plancherel;
pub mod point;
pub mod poincare;
pub mod pseudo;

pub use automorphic::{Asymptote, AutomorphicFunction, Evaluator, Source};
pub use boundary::{BoundaryFunction, CuspTerm, FunnelProfile, CUSP_CARRIER};
pub use constant_term::{constant_term, constant_term_with, truncate};
pub use domain::{constant_tail, fd_integrate, horocycle_sup, FdConfig, FdGrid, FdRow, Tabulation};
pub use eisenstein::{eisenstein, eisenstein_lattice, EisensteinRow, EisensteinSeries};
pub use error::AutomorphicError;
pub use maass_selberg::{
    maass_selberg, maass_selberg_rhs, maass_selberg_with, truncated_product_integral, truncation_grid,
    MaassSelbergReport,
};
pub use plancherel::{
    adjoint_transform, constant_term_symmetry_check, constant_term_transform, continuous_half_line,
    rank_one_plancherel, rank_one_plancherel_with, scattering_function, PlancherelTerm, RankOnePlancherel,
    SymmetryReport, SymmetrySample,
};
pub use point::{HalfPlanePoint, Sl2};
pub use poincare::sine_poincare;
pub use pseudo::{pseudo_eisenstein, radon_transform, CosetSum, PseudoEisenstein, TRUNCATION_TOLERANCE};
