//! Rank-one Plancherel decomposition and the constant-term symmetry
//! φ̌_B(s) = c(−s)φ̌_B(−s).
//!
//! Pairings use ½dμ on F, under which ⟨Ψf, φ⟩ = ∫ f φ_B x^{−2} d×x in the
//! coordinate x = y^{1/2}.

use std::f64::consts::PI;

use meromorphic_core::{
    charged_product, charged_sum, negate_argument, Charge, ChargedLaurent, ChargedMeromorphicFunction, DecayClass,
    MeromorphicError, Strip,
};
use num_complex::Complex64;
use serde::Serialize;
use special_functions::quad::composite_nodes;
use special_functions::{intertwining_c, C_RESIDUE_AT_ONE};
use torus_calculus::{inversion_breakdown, ContourConfig};

use crate::automorphic::{AutomorphicFunction, Source};
use crate::boundary::BoundaryFunction;
use crate::constant_term::constant_term;
use crate::domain::{FdConfig, FdGrid};
use crate::eisenstein::EisensteinSeries;
use crate::error::AutomorphicError;
use crate::pseudo::PseudoEisenstein;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// c(s) with its pole at 1 carrying charge `−`.
pub fn scattering_function() -> ChargedMeromorphicFunction {
    let pole = ChargedLaurent::single(Complex64::new(1.0, 0.0), 1, Complex64::new(C_RESIDUE_AT_ONE, 0.0), Charge::Minus);
    ChargedMeromorphicFunction::new(
        |s| intertwining_c(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
        vec![pole],
        Strip::PLANE,
        DecayClass::Polynomial(0.0),
    )
}

/// φ̌_B(s) = f̌(s) + c(−s)f̌(−s) for φ = Ψf.
pub fn constant_term_transform(f: &BoundaryFunction) -> Result<ChargedMeromorphicFunction, AutomorphicError> {
    let fh = f.mellin()?;
    let reflected = charged_product(&negate_argument(&scattering_function()), &negate_argument(&fh))?;
    Ok(charged_sum(&fh, &reflected))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlancherelTerm {
    /// `continuous`, `residual` or `exponent`
    pub name: String,
    pub location: Option<[f64; 2]>,
    pub value: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankOnePlancherel {
    pub value: [f64; 2],
    pub breakdown: Vec<PlancherelTerm>,
}

impl RankOnePlancherel {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value[0], self.value[1])
    }

    pub fn term(&self, name: &str) -> Complex64 {
        self.breakdown
            .iter()
            .filter(|t| t.name == name)
            .map(|t| Complex64::new(t.value[0], t.value[1]))
            .sum()
    }
}

fn boundary_of(phi: &AutomorphicFunction) -> Result<&BoundaryFunction, AutomorphicError> {
    match &phi.source {
        Source::PseudoEisenstein(f) => Ok(f),
        _ => Err(AutomorphicError::NotPseudoEisenstein),
    }
}

/// ⟨φ₁, φ₂⟩ against ½dμ for pseudo-Eisenstein series, as a continuous
/// integral over the unitary axis plus discrete terms.
pub fn rank_one_plancherel(
    phi1: &AutomorphicFunction,
    phi2: &AutomorphicFunction,
) -> Result<RankOnePlancherel, AutomorphicError> {
    rank_one_plancherel_with(phi1, phi2, &ContourConfig::default())
}

/// The pairing is the torus inversion at x = 1 on Re s = 0 of
/// F(s) = f̌₁(s)·φ̌₂,B(−s). Charged residues of F are the discrete terms:
/// the pole of c at 1 gives the projection onto constants, and cusp
/// exponents with Re sᵢ > 0 give the terms at ±sᵢ.
pub fn rank_one_plancherel_with(
    phi1: &AutomorphicFunction,
    phi2: &AutomorphicFunction,
    cfg: &ContourConfig,
) -> Result<RankOnePlancherel, AutomorphicError> {
    let f1 = boundary_of(phi1)?;
    let f2 = boundary_of(phi2)?;
    if f1.is_zero() || f2.is_zero() {
        return Ok(RankOnePlancherel { value: [0.0, 0.0], breakdown: Vec::new() });
    }
    let e1: Vec<Complex64> = f1.cusp_terms().iter().map(|t| t.exponent).collect();
    let e2: Vec<Complex64> = f2.cusp_terms().iter().map(|t| t.exponent).collect();
    for &a in &e1 {
        for &b in &e2 {
            if (a + b).norm() < 1e-10 {
                return Err(AutomorphicError::CriticalExponent { s1: a, s2: b });
            }
        }
    }
    for &e in e1.iter().chain(&e2) {
        if (e.re.abs() - 1.0).abs() < 1e-10 && e.im.abs() < 1e-10 {
            return Err(AutomorphicError::DegenerateParameter { s1: e, s2: Complex64::new(1.0, 0.0) });
        }
    }
    let a1 = f1.mellin()?;
    let b2 = negate_argument(&constant_term_transform(f2)?);
    let big_f = charged_product(&a1, &b2).map_err(|e| match e {
        MeromorphicError::Admissibility { at } => AutomorphicError::CriticalExponent { s1: at, s2: -at },
        e => e.into(),
    })?;
    let bd = inversion_breakdown(&big_f, 0.0, 1.0, cfg)?;
    let mut breakdown = vec![PlancherelTerm { name: "continuous".into(), location: None, value: bd.contour }];
    let one = Complex64::new(1.0, 0.0);
    let mut exponent_terms: Vec<(Complex64, Complex64)> = Vec::new();
    for r in &bd.residues {
        let at = Complex64::new(r.location[0], r.location[1]);
        let v = Complex64::new(r.value[0], r.value[1]);
        if (at - one).norm() < 1e-9 {
            breakdown.push(PlancherelTerm { name: "residual".into(), location: Some([1.0, 0.0]), value: r.value });
            continue;
        }
        let key = e1
            .iter()
            .chain(&e2)
            .copied()
            .find(|e| (at - e).norm() < 1e-9 || (at + e).norm() < 1e-9)
            .unwrap_or(at);
        match exponent_terms.iter_mut().find(|(k, _)| (k - key).norm() < 1e-9) {
            Some(entry) => entry.1 += v,
            None => exponent_terms.push((key, v)),
        }
    }
    for (k, v) in exponent_terms {
        breakdown.push(PlancherelTerm { name: "exponent".into(), location: Some(pair(k)), value: pair(v) });
    }
    Ok(RankOnePlancherel { value: bd.value, breakdown })
}

/// (1/2π)∫₀^{t_max} φ̌₁,B(it)φ̌₂,B(−it) dt.
pub fn continuous_half_line(
    f1: &BoundaryFunction,
    f2: &BoundaryFunction,
    t_max: f64,
) -> Result<Complex64, AutomorphicError> {
    let a = constant_term_transform(f1)?;
    let b = constant_term_transform(f2)?;
    let panels = (t_max / 0.25).ceil() as usize;
    let breaks: Vec<f64> = (0..=panels).map(|k| t_max * k as f64 / panels as f64).collect();
    let sum: Complex64 = composite_nodes(&breaks, 16)
        .into_iter()
        .map(|(t, w)| a.eval(Complex64::new(0.0, t)) * b.eval(Complex64::new(0.0, -t)) * w)
        .sum();
    Ok(sum / (2.0 * PI))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrySample {
    pub t: f64,
    /// φ̌_B(it)
    pub plus: [f64; 2],
    /// φ̌_B(−it)
    pub minus: [f64; 2],
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub method: String,
    pub samples: Vec<SymmetrySample>,
    pub deviation: f64,
}

/// φ̌_B(±it) = ½∫_F Ψf·E(·, ∓it) dμ on one tabulation of Ψf.
pub fn adjoint_transform(
    psi: &PseudoEisenstein,
    ts: &[f64],
    cfg: &FdConfig,
) -> Result<Vec<(Complex64, Complex64)>, AutomorphicError> {
    let grid = FdGrid::new(cfg);
    let values = grid.tabulate(|z| psi.eval(z));
    let pairing = |s: Complex64| -> Result<Complex64, AutomorphicError> {
        let e = EisensteinSeries::new(s)?;
        let tab = grid.tabulate_rows(|row| {
            let r = e.row(row.y);
            row.nodes.iter().map(|&(x, _)| r.eval(x)).collect()
        });
        Ok(0.5 * grid.integrate_product(&values, &tab))
    };
    ts.iter().map(|&t| Ok((pairing(Complex64::new(0.0, -t))?, pairing(Complex64::new(0.0, t))?))).collect()
}

/// max over the t grid of |φ̌_B(it) − c(−it)φ̌_B(−it)|.
///
/// Pseudo-Eisenstein series without cusp terms are paired against
/// Eisenstein series on F. For E(·, s₀) the constant term has
/// coefficients 1 and c(s₀) at ±s₀ and the identity reduces to
/// c(s₀)c(−s₀) = 1. Anything else uses the sampled constant term on
/// 1 ≤ y ≤ `cfg.y_max`.
pub fn constant_term_symmetry_check(
    phi: &AutomorphicFunction,
    ts: &[f64],
    cfg: &FdConfig,
) -> Result<SymmetryReport, AutomorphicError> {
    let c_neg = |t: f64| intertwining_c(Complex64::new(0.0, -t));
    let mut samples = Vec::new();
    let method = match &phi.source {
        Source::Eisenstein(s0) => {
            let c = intertwining_c(*s0)?;
            let cm = intertwining_c(-*s0)?;
            samples.push(SymmetrySample {
                t: s0.im,
                plus: [1.0, 0.0],
                minus: pair(c),
                deviation: (Complex64::new(1.0, 0.0) - cm * c).norm(),
            });
            "eisenstein"
        }
        Source::PseudoEisenstein(f) if f.cusp_terms().is_empty() => {
            let psi = PseudoEisenstein::new(f.clone())?;
            let y_max = cfg.y_max.max(f.cusp_height(1e-16));
            let cfg = cfg.clone().with_y_max(y_max);
            for (&t, (p, m)) in ts.iter().zip(adjoint_transform(&psi, ts, &cfg)?) {
                samples.push(SymmetrySample { t, plus: pair(p), minus: pair(m), deviation: (p - c_neg(t)? * m).norm() });
            }
            "eisenstein-adjoint"
        }
        Source::PseudoEisenstein(f) => {
            let h = constant_term_transform(f)?;
            for &t in ts {
                let p = h.eval(Complex64::new(0.0, t));
                let m = h.eval(Complex64::new(0.0, -t));
                samples.push(SymmetrySample { t, plus: pair(p), minus: pair(m), deviation: (p - c_neg(t)? * m).norm() });
            }
            "transform"
        }
        Source::Generic => {
            let breaks: Vec<f64> = (0..=40).map(|k| cfg.y_max.ln() * k as f64 / 40.0).collect();
            let nodes: Vec<(f64, f64, Complex64)> = composite_nodes(&breaks, 16)
                .into_iter()
                .map(|(u, w)| (u, w, constant_term(phi, u.exp())))
                .collect();
            let windowed = |s: Complex64| -> Complex64 {
                nodes.iter().map(|&(u, w, v)| v * (-(1.0 + s) * 0.5 * u).exp() * w).sum::<Complex64>() * 0.5
            };
            for &t in ts {
                let p = windowed(Complex64::new(0.0, t));
                let m = windowed(Complex64::new(0.0, -t));
                samples.push(SymmetrySample { t, plus: pair(p), minus: pair(m), deviation: (p - c_neg(t)? * m).norm() });
            }
            "sampled"
        }
    };
    let deviation = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    Ok(SymmetryReport { method: method.into(), samples, deviation })
}
