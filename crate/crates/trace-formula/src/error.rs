use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("{what} does not decay: {detail}")]
    Decay { what: &'static str, detail: String },
    #[error("spherical transform is not even: |h(s) − h(−s)| = {defect:.3e} at s = {at}")]
    NotEven { at: Complex64, defect: f64 },
    #[error("truncation fit residuals do not decay: {residuals:?}")]
    Fit { residuals: Vec<f64> },
    #[error("class datum is not regular hyperbolic (discriminant {discriminant})")]
    EllipticInput { discriminant: f64 },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Special(#[from] special_functions::SpecialError),
    #[error(transparent)]
    Meromorphic(#[from] meromorphic_core::MeromorphicError),
}
