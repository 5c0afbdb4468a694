//! JSON description of asymptotically finite functions.
//!
//! ```json
//! {
//!   "name": "gaussian_plus_power",
//!   "core": {"kind": "log_gaussian", "amplitude": 1.0, "center": 0.0, "width": 1.0},
//!   "terms": [
//!     {"exponent": [0.5, 0.0], "log_poly": [[1.0, 0.0]], "side": "zero", "carrier": {"smooth": 1.0}}
//!   ],
//!   "tail_decay_hint": 4.0
//! }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::aff::{AsymptoticallyFiniteFunction, ExponentTerm};
use crate::carrier::{Carrier, Side};
use crate::error::TorusError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoreSpec {
    Zero,
    /// a·exp(−(log x − c)²/2w²)
    LogGaussian { amplitude: f64, center: f64, width: f64 },
    /// a·exp(−x)·1_{x>1}; has a jump at 1.
    ExpTail { amplitude: f64 },
    /// a·exp(−x − 1/x)
    Bessel { amplitude: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSpec {
    pub exponent: [f64; 2],
    pub log_poly: Vec<[f64; 2]>,
    pub side: Side,
    pub carrier: Carrier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub name: String,
    pub core: CoreSpec,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub tail_decay_hint: Option<f64>,
}

impl FunctionSpec {
    pub fn build(&self) -> AsymptoticallyFiniteFunction {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                ExponentTerm::new(
                    Complex64::new(t.exponent[0], t.exponent[1]),
                    t.log_poly.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
                    t.side,
                    t.carrier,
                )
            })
            .collect();
        let mut f = match self.core {
            CoreSpec::Zero => AsymptoticallyFiniteFunction::from_terms(terms),
            CoreSpec::LogGaussian { amplitude, center, width } => AsymptoticallyFiniteFunction::new(
                move |x: f64| {
                    let d = (x.ln() - center) / width;
                    Complex64::new(amplitude * (-0.5 * d * d).exp(), 0.0)
                },
                terms,
            ),
            CoreSpec::ExpTail { amplitude } => AsymptoticallyFiniteFunction::new(
                move |x: f64| Complex64::new(if x > 1.0 { amplitude * (-x).exp() } else { 0.0 }, 0.0),
                terms,
            )
            .with_rough_core(),
            CoreSpec::Bessel { amplitude } => AsymptoticallyFiniteFunction::new(
                move |x: f64| Complex64::new(amplitude * (-x - 1.0 / x).exp(), 0.0),
                terms,
            ),
        };
        if let Some(h) = self.tail_decay_hint {
            f = f.with_tail_hint(h);
        }
        f
    }
}

pub fn parse_corpus(json: &str) -> Result<Vec<FunctionSpec>, TorusError> {
    serde_json::from_str(json).map_err(|e| TorusError::Corpus(e.to_string()))
}

/// The built-in corpus used by the verification suites.
pub fn default_corpus() -> Vec<FunctionSpec> {
    let gauss = CoreSpec::LogGaussian { amplitude: 1.0, center: 0.0, width: 1.0 };
    let term = |e: f64, side, carrier| TermSpec { exponent: [e, 0.0], log_poly: vec![[1.0, 0.0]], side, carrier };
    vec![
        FunctionSpec { name: "gaussian".into(), core: gauss.clone(), terms: vec![], tail_decay_hint: None },
        FunctionSpec {
            name: "sharp_power_at_zero".into(),
            core: CoreSpec::Zero,
            terms: vec![term(1.0, Side::Zero, Carrier::Sharp)],
            tail_decay_hint: None,
        },
        FunctionSpec {
            name: "sharp_power_at_infinity".into(),
            core: CoreSpec::Zero,
            terms: vec![term(-0.5, Side::Infinity, Carrier::Sharp)],
            tail_decay_hint: None,
        },
        FunctionSpec {
            name: "smooth_power_at_zero".into(),
            core: CoreSpec::Zero,
            terms: vec![term(1.0, Side::Zero, Carrier::Smooth(1.0))],
            tail_decay_hint: None,
        },
        FunctionSpec {
            name: "smooth_power_at_infinity".into(),
            core: CoreSpec::Zero,
            terms: vec![term(-0.5, Side::Infinity, Carrier::Smooth(1.0))],
            tail_decay_hint: None,
        },
        FunctionSpec {
            name: "gaussian_with_log_term".into(),
            core: gauss.clone(),
            terms: vec![TermSpec {
                exponent: [0.5, 1.0],
                log_poly: vec![[1.0, 0.0], [0.5, 0.0]],
                side: Side::Zero,
                carrier: Carrier::Smooth(1.0),
            }],
            tail_decay_hint: None,
        },
        FunctionSpec {
            name: "bessel_core_two_sided".into(),
            core: CoreSpec::Bessel { amplitude: 2.0 },
            terms: vec![term(0.25, Side::Zero, Carrier::Smooth(1.5)), term(-0.75, Side::Infinity, Carrier::Smooth(1.0))],
            tail_decay_hint: None,
        },
    ]
}
