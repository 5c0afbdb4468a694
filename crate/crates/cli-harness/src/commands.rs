//! JSON producers behind `tf report`, `auto …` and `special eval`.

use std::path::Path;

use automorphic_halfplane::{
    constant_term, fd_integrate, maass_selberg_with, rank_one_plancherel_with, BoundaryFunction, EisensteinSeries,
    FdConfig, HalfPlanePoint, PseudoEisenstein,
};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use special_functions::{c_log_derivative, gamma, intertwining_c, kbessel, xi, zeta};
use torus_calculus::ContourConfig;
use trace_formula::{gaussian, polynomial_gaussian, tf_report, FitConfig, GeometricTermConfig, SphericalTestFunction};

use crate::error::HarnessError;

fn config_err(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config(e.to_string())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Parses `re`, `re,im` or `re+imi` / `re-imi`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if let Some((a, b)) = t.split_once(',') {
        let re = a.trim().parse::<f64>().map_err(|e| format!("{text}: {e}"))?;
        let im = b.trim().parse::<f64>().map_err(|e| format!("{text}: {e}"))?;
        return Ok(Complex64::new(re, im));
    }
    t.parse::<Complex64>().map_err(|e| format!("{text}: {e}"))
}

#[derive(Debug, Serialize)]
pub struct AutoOutput {
    pub inputs: Value,
    pub value: [f64; 2],
    pub breakdown: Vec<BreakdownEntry>,
    pub deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct BreakdownEntry {
    pub name: String,
    pub value: [f64; 2],
}

fn entry(name: &str, z: Complex64) -> BreakdownEntry {
    BreakdownEntry { name: name.to_string(), value: pair(z) }
}

pub fn test_function(kind: &str, width: f64) -> Result<SphericalTestFunction, HarnessError> {
    match kind {
        "gaussian" => gaussian(width).map_err(config_err),
        "polynomial-gaussian" => polynomial_gaussian(width).map_err(config_err),
        other => Err(HarnessError::Config(format!("unknown test function {other:?} (gaussian, polynomial-gaussian)"))),
    }
}

/// Spectral parameters, one or more per line; `#` starts a comment.
pub fn read_cusp_data(path: &Path) -> Result<Vec<f64>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            out.push(tok.parse::<f64>().map_err(|e| config_err(format!("{}: {tok}: {e}", path.display())))?);
        }
    }
    Ok(out)
}

pub struct TfArgs<'a> {
    pub h1: (&'a str, f64),
    pub h2: (&'a str, f64),
    pub residual: bool,
    pub cusp_data: Option<Vec<f64>>,
}

pub fn tf_report_json(args: &TfArgs<'_>) -> Result<Value, HarnessError> {
    let t1 = test_function(args.h1.0, args.h1.1)?;
    let t2 = test_function(args.h2.0, args.h2.1)?;
    let report = tf_report(
        &t1,
        &t2,
        args.residual,
        args.cusp_data.as_deref(),
        &FitConfig::default(),
        &GeometricTermConfig::default(),
    )
    .map_err(|e| HarnessError::Report(e.to_string()))?;
    let mut v = serde_json::to_value(&report).map_err(|e| HarnessError::Report(e.to_string()))?;
    v["inputs"] = json!({
        "h1": { "family": args.h1.0, "width": args.h1.1 },
        "h2": { "family": args.h2.0, "width": args.h2.1 },
        "residual": args.residual,
        "cusp_parameters": args.cusp_data,
    });
    Ok(v)
}

fn psi(alpha: f64, beta: f64) -> Result<PseudoEisenstein, HarnessError> {
    PseudoEisenstein::new(BoundaryFunction::bessel(alpha, beta)).map_err(config_err)
}

/// Constant term of Ψf at height y, f = y^α e^{−β(y+1/y)}: f(y) + Rf(y)
/// against horocycle quadrature.
pub fn auto_constant_term(alpha: f64, beta: f64, y: f64) -> Result<AutoOutput, HarnessError> {
    if !(y > 0.0) {
        return Err(config_err("height must be positive"));
    }
    let p = psi(alpha, beta)?;
    let direct = p.boundary().eval(y);
    let radon = p.radon(y);
    let value = direct + radon;
    let quadrature = constant_term(&p.automorphic(), y);
    Ok(AutoOutput {
        inputs: json!({ "alpha": alpha, "beta": beta, "y": y }),
        value: pair(value),
        breakdown: vec![entry("f", direct), entry("radon", radon), entry("horocycle_quadrature", quadrature)],
        deviation: (quadrature - value).norm(),
    })
}

/// E(z, s) from its Fourier expansion at the reduced point, checked against
/// the expansion at z itself.
pub fn auto_eisenstein(s: Complex64, z: HalfPlanePoint) -> Result<AutoOutput, HarnessError> {
    if !(z.y > 0.0) {
        return Err(config_err("z must lie in the upper half-plane"));
    }
    let e = EisensteinSeries::new(s).map_err(config_err)?;
    let reduced = z.reduce().0;
    let value = e.eval(z);
    let row = e.row(reduced.y);
    let constant = e.constant_term(reduced.y);
    let unreduced = e.eval_unreduced(z);
    Ok(AutoOutput {
        inputs: json!({ "s": pair(s), "z": [z.x, z.y], "reduced": [reduced.x, reduced.y] }),
        value: pair(value),
        breakdown: vec![
            entry("constant_term", constant),
            entry("non_constant", row.oscillating(reduced.x)),
            entry("scattering", e.scattering()),
            entry("expansion_at_z", unreduced),
        ],
        deviation: (unreduced - value).norm(),
    })
}

pub fn auto_maass_selberg(s1: Complex64, s2: Complex64, t: f64) -> Result<AutoOutput, HarnessError> {
    let r = maass_selberg_with(s1, s2, t, &FdConfig::default()).map_err(config_err)?;
    let lhs = Complex64::new(r.lhs[0], r.lhs[1]);
    Ok(AutoOutput {
        inputs: json!({ "s1": pair(s1), "s2": pair(s2), "T": t }),
        value: pair(lhs),
        breakdown: vec![
            entry("lhs", lhs),
            entry("rhs", Complex64::new(r.rhs[0], r.rhs[1])),
            entry("lhs_full_measure", Complex64::new(r.lhs_full_measure[0], r.lhs_full_measure[1])),
        ],
        deviation: r.deviation,
    })
}

/// Spectral side of ⟨Ψf₁, Ψf₂⟩ against direct quadrature on F.
pub fn auto_plancherel(f1: (f64, f64), f2: (f64, f64)) -> Result<AutoOutput, HarnessError> {
    let (p1, p2) = (psi(f1.0, f1.1)?, psi(f2.0, f2.1)?);
    let spectral =
        rank_one_plancherel_with(&p1.automorphic(), &p2.automorphic(), &ContourConfig::default()).map_err(config_err)?;
    let y_max = p1.boundary().cusp_height(1e-16).max(p2.boundary().cusp_height(1e-16)).max(FdConfig::default().y_max);
    let direct =
        0.5 * fd_integrate(|z| p1.eval(z) * p2.eval(z), &FdConfig::default().with_y_max(y_max), None).map_err(config_err)?;
    let mut breakdown: Vec<BreakdownEntry> = spectral
        .breakdown
        .iter()
        .map(|t| BreakdownEntry { name: t.name.clone(), value: t.value })
        .collect();
    breakdown.push(entry("direct", direct));
    Ok(AutoOutput {
        inputs: json!({ "f1": { "alpha": f1.0, "beta": f1.1 }, "f2": { "alpha": f2.0, "beta": f2.1 } }),
        value: spectral.value,
        breakdown,
        deviation: (spectral.value() - direct).norm(),
    })
}

pub const SPECIAL_FUNCTIONS: [&str; 6] = ["xi", "zeta", "gamma", "c", "c-log-derivative", "kbessel"];

/// `kbessel` reads the order from `s` and needs `x`.
pub fn special_eval(function: &str, s: Complex64, x: Option<f64>) -> Result<Value, HarnessError> {
    let value = match function {
        "xi" => xi(s).map_err(config_err)?,
        "zeta" => zeta(s).map_err(config_err)?,
        "gamma" => gamma(s),
        "c" => intertwining_c(s).map_err(config_err)?,
        "c-log-derivative" => c_log_derivative(s).map_err(config_err)?,
        "kbessel" => {
            let x = x.ok_or_else(|| config_err("kbessel needs --x"))?;
            if !(x > 0.0) {
                return Err(config_err("kbessel needs x > 0"));
            }
            let k = kbessel(s, x);
            return Ok(json!({ "function": function, "nu": pair(s), "x": x, "value": pair(k.value), "underflow": k.underflow }));
        }
        other => {
            return Err(config_err(format!("unknown function {other:?}; one of {}", SPECIAL_FUNCTIONS.join(", "))));
        }
    };
    Ok(json!({ "function": function, "s": pair(s), "value": pair(value) }))
}
