use meromorphic_core::MeromorphicError;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorusError {
    #[error("core fails the tail-decay test on the {side} side (sample {value:e})")]
    TailDecay { side: &'static str, value: f64 },
    #[error("insufficient vertical decay for contour quadrature: {0}")]
    Decay(String),
    #[error("critical exponent 0 present")]
    CriticalExponent,
    #[error("pole of order {order} at {at} sits on the contour")]
    HigherOrderOnContour { at: Complex64, order: usize },
    #[error("function has exponents at 0 (E+ must be empty)")]
    ZeroSideExponents,
    #[error("sharp carriers cannot be differentiated")]
    SharpDerivative,
    #[error(transparent)]
    Meromorphic(#[from] MeromorphicError),
    #[error("corpus: {0}")]
    Corpus(String),
}
