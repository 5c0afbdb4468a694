//! Assembled report of every computable term.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::TraceError;
use crate::geometric::{geometric_side_of, tf_minus1_geometric_of, GeometricMinus1, GeometricSide, GeometricTermConfig};
use crate::laurent::{two_term_laurent_kernel_of, FitConfig, TruncationFit};
use crate::ser::complex;
use crate::spectral::{cuspidal_display, spectral_side, tf_minus1_spectral, SpectralSide};
use crate::spherical::SphericalTestFunction;

#[derive(Debug, Clone, Serialize)]
pub struct Triangle {
    #[serde(with = "complex")]
    pub fit: Complex64,
    #[serde(with = "complex")]
    pub spectral: Complex64,
    #[serde(with = "complex")]
    pub geometric: Complex64,
    pub fit_vs_spectral: f64,
    pub spectral_vs_geometric: f64,
    pub fit_vs_geometric: f64,
}

impl Triangle {
    pub fn max_deviation(&self) -> f64 {
        self.fit_vs_spectral.max(self.spectral_vs_geometric).max(self.fit_vs_geometric)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TfReport {
    pub truncation_fit: TruncationFit,
    pub geometric_minus1: GeometricMinus1,
    pub triangle: Triangle,
    pub spectral: SpectralSide,
    pub geometric: GeometricSide,
    /// Σ h₁h₂ over supplied Maass parameters, if any.
    #[serde(with = "option_complex")]
    pub cuspidal_display: Option<Complex64>,
    /// geometric total − spectral total: what the cuspidal spectrum must supply.
    #[serde(with = "complex")]
    pub cuspidal_remainder: Complex64,
    pub config: GeometricTermConfig,
}

mod option_complex {
    use num_complex::Complex64;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        match z {
            Some(z) => s.collect_seq([z.re, z.im]),
            None => s.serialize_none(),
        }
    }
}

pub fn tf_report(
    t1: &SphericalTestFunction,
    t2: &SphericalTestFunction,
    residual_on: bool,
    cusp_parameters: Option<&[f64]>,
    fit_config: &FitConfig,
    config: &GeometricTermConfig,
) -> Result<TfReport, TraceError> {
    let phi = t1.convolution(t2)?;
    let ((fit, tf_spec), ((geo1, geo0), spectral)) = rayon::join(
        || (two_term_laurent_kernel_of(&phi, fit_config), tf_minus1_spectral(t1, t2)),
        || {
            rayon::join(
                || (tf_minus1_geometric_of(&phi, config), geometric_side_of(&phi, config)),
                || spectral_side(t1, t2, residual_on),
            )
        },
    );
    let (truncation_fit, spectral_value, geometric_minus1) = (fit?, tf_spec?, geo1?);
    let (geometric, spectral) = (geo0?, spectral?);
    let fit_value = truncation_fit.laurent.a_minus1;
    let triangle = Triangle {
        fit: fit_value,
        spectral: spectral_value,
        geometric: geometric_minus1.value,
        fit_vs_spectral: (fit_value - spectral_value).norm(),
        spectral_vs_geometric: (spectral_value - geometric_minus1.value).norm(),
        fit_vs_geometric: (fit_value - geometric_minus1.value).norm(),
    };
    let cuspidal_remainder = geometric.total - spectral.total;
    Ok(TfReport {
        truncation_fit,
        geometric_minus1,
        triangle,
        spectral,
        geometric,
        cuspidal_display: cusp_parameters.map(|r| cuspidal_display(t1, t2, r)),
        cuspidal_remainder,
        config: config.clone(),
    })
}
