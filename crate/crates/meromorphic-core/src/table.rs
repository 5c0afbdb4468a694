//! JSON pole tables.
//!
//! One entry per non-zero polar coefficient:
//!
//! ```json
//! {"location": {"re": 1.0, "im": 0.0}, "order": -1, "charge": "plus",
//!  "coefficient": {"re": -1.0, "im": 0.0}}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::function::{ChargedMeromorphicFunction, LOCATION_TOLERANCE};
use crate::laurent::{Charge, ChargedLaurent};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleTableEntry {
    pub location: ComplexJson,
    /// Negative Laurent order, e.g. −1 for the residue.
    pub order: i32,
    pub charge: Charge,
    pub coefficient: ComplexJson,
}

pub fn pole_table(h: &ChargedMeromorphicFunction) -> Vec<PoleTableEntry> {
    let mut out = Vec::new();
    for p in &h.poles {
        for charge in [Charge::Plus, Charge::Minus] {
            for (k, a) in p.charged(charge).iter().enumerate() {
                if *a != Complex64::new(0.0, 0.0) {
                    out.push(PoleTableEntry {
                        location: p.location.into(),
                        order: -(k as i32) - 1,
                        charge,
                        coefficient: (*a).into(),
                    });
                }
            }
        }
    }
    out
}

pub fn poles_from_table(entries: &[PoleTableEntry]) -> Vec<ChargedLaurent> {
    let mut poles: Vec<ChargedLaurent> = Vec::new();
    for e in entries {
        let loc: Complex64 = e.location.into();
        let idx = match poles.iter().position(|p| (p.location - loc).norm() < LOCATION_TOLERANCE) {
            Some(i) => i,
            None => {
                poles.push(ChargedLaurent::new(loc));
                poles.len() - 1
            }
        };
        let k = (-e.order - 1).max(0) as usize;
        let v = poles[idx].charged_mut(e.charge);
        if v.len() <= k {
            v.resize(k + 1, Complex64::new(0.0, 0.0));
        }
        v[k] += Complex64::from(e.coefficient);
    }
    poles
}

pub fn pole_table_json(h: &ChargedMeromorphicFunction) -> String {
    serde_json::to_string_pretty(&pole_table(h)).expect("pole table serializes")
}

pub fn poles_from_json(text: &str) -> Result<Vec<ChargedLaurent>, serde_json::Error> {
    let entries: Vec<PoleTableEntry> = serde_json::from_str(text)?;
    Ok(poles_from_table(&entries))
}
