//! Mellin transforms of the two constant-term pieces of the kernel.

use meromorphic_core::{charged_product, negate_argument, ChargedMeromorphicFunction, DecayClass};
use num_complex::Complex64;
use serde::Serialize;

use automorphic_halfplane::plancherel::scattering_function;

use crate::error::TraceError;
use crate::spherical::SphericalTestFunction;

/// (diag, adiag) with diag(s) = h(s) and adiag(s) = c(−s)h(s).
pub fn kernel_constant_terms(
    t: &SphericalTestFunction,
) -> Result<(ChargedMeromorphicFunction, ChargedMeromorphicFunction), TraceError> {
    let h = t.evaluator();
    let diag = ChargedMeromorphicFunction::entire(move |s| h(s), DecayClass::Rapid);
    let adiag = charged_product(&negate_argument(&scattering_function()), &diag)?;
    Ok((diag, adiag))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelRelationCheck {
    pub s: [f64; 2],
    /// |diag(s) − c(−s)c(s)diag(−s)|
    pub diag_to_diag: f64,
    /// |adiag(s) − c(−s)²adiag(−s)|
    pub adiag_to_adiag: f64,
    /// |adiag(s) − c(−s)diag(s)|, with diag(s) computed independently
    pub diag_to_adiag: f64,
}

/// Evaluates the three intertwining relations at s.
pub fn kernel_relations_at(t: &SphericalTestFunction, s: Complex64) -> Result<KernelRelationCheck, TraceError> {
    let (diag, adiag) = kernel_constant_terms(t)?;
    let c = |z: Complex64| special_functions::intertwining_c(z);
    let (cp, cm) = (c(s)?, c(-s)?);
    Ok(KernelRelationCheck {
        s: [s.re, s.im],
        diag_to_diag: (diag.eval(s) - cm * cp * diag.eval(-s)).norm(),
        adiag_to_adiag: (adiag.eval(s) - cm * cm * adiag.eval(-s)).norm(),
        diag_to_adiag: (adiag.eval(s) - cm * t.h(s)).norm(),
    })
}
