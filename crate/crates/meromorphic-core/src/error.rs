use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MeromorphicError {
    #[error("admissibility violated at {at}: a + pole meets a − pole")]
    Admissibility { at: Complex64 },
    #[error("sample point {at} lies within the exclusion radius of the pole at {pole}")]
    PoleProximity { at: Complex64, pole: Complex64 },
    #[error("abscissa {sigma} lies outside the declared strip")]
    OutsideStrip { sigma: f64 },
}
