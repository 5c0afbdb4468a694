use meromorphic_core::MeromorphicError;
use num_complex::Complex64;
use special_functions::SpecialError;
use thiserror::Error;
use torus_calculus::TorusError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AutomorphicError {
    /// The coset sum was cut off with an estimated tail above tolerance;
    /// the partial value is still returned.
    #[error("coset sum truncated: estimated tail {tail:e} (value {value})")]
    TruncationWarning { value: Complex64, tail: f64 },
    #[error("boundary function does not decay at the funnel (|f| = {value:e} at y = {y:e})")]
    FunnelDecay { y: f64, value: f64 },
    #[error("integrand not certified to decay at y = {y_max} (sup {sup:e}) and no tail supplied")]
    TailMissing { y_max: f64, sup: f64 },
    #[error("degenerate parameters s1 = {s1}, s2 = {s2}")]
    DegenerateParameter { s1: Complex64, s2: Complex64 },
    #[error("critical exponent: s1 + s2 = 0 (s1 = {s1}, s2 = {s2})")]
    CriticalExponent { s1: Complex64, s2: Complex64 },
    #[error("operation needs a pseudo-Eisenstein series")]
    NotPseudoEisenstein,
    #[error("s = {s} lies outside the region of convergence")]
    OutsideConvergence { s: Complex64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Meromorphic(#[from] MeromorphicError),
}
