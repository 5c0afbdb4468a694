use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecialError {
    #[error("pole at s = {at}")]
    Pole { at: Complex64 },
    #[error("s = {at} is within {radius} of a pole or zero")]
    PoleProximity { at: Complex64, radius: f64 },
}
