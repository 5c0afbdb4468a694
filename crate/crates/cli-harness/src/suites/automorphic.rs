use std::f64::consts::PI;

use automorphic_halfplane::{
    constant_term_symmetry_check, fd_integrate, maass_selberg_with, rank_one_plancherel_with, BoundaryFunction,
    CuspTerm, EisensteinSeries, PseudoEisenstein,
};
use num_complex::Complex64;
use special_functions::kbessel;

use super::{c, err, fmt_c, Case, Outcome};
use crate::config::{RunConfig, ANALYTIC, DOMAIN};

const PAIRS: [((f64, f64), (f64, f64)); 5] = [
    ((0.5, 2.0), (0.5, -2.0)),
    ((0.0, 2.0), (0.0, 3.0)),
    ((0.3, 1.0), (0.0, 5.0)),
    ((1.5, 0.0), (0.0, 0.7)),
    ((0.2, -1.0), (0.6, 2.5)),
];

pub fn maass_selberg(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for (k, (a, b)) in PAIRS.into_iter().enumerate() {
        for &t in &cfg.maass_selberg_t {
            let (s1, s2) = (c(a.0, a.1), c(b.0, b.1));
            let inputs = format!("s1 = {}, s2 = {}, T = {t}", fmt_c(s1), fmt_c(s2));
            cases.push(Case::single(format!("pair_{k}_t_{t}"), inputs, DOMAIN, move |cfg| {
                let r = maass_selberg_with(s1, s2, t, &cfg.fd()).map_err(err)?;
                Ok((c(r.rhs[0], r.rhs[1]), c(r.lhs[0], r.lhs[1]), r.deviation))
            }));
        }
    }
    cases
}

fn psi(f: &BoundaryFunction) -> Result<PseudoEisenstein, String> {
    PseudoEisenstein::new(f.clone()).map_err(err)
}

fn bessel_corpus() -> [(f64, f64); 3] {
    [(1.0, 1.0), (2.0, 0.7), (0.5, 1.5)]
}

fn bessel_name(p: (f64, f64)) -> String {
    format!("y^{}·exp(-{}(y+1/y))", p.0, p.1)
}

fn symmetry_ts() -> Vec<f64> {
    (0..=20).map(|k| 0.5 * k as f64).collect()
}

pub fn constant_term_symmetry() -> Vec<Case> {
    let mut cases = Vec::new();
    for p in bessel_corpus() {
        let inputs = format!("pseudo-Eisenstein of {}, t = 0, 0.5, ..., 10", bessel_name(p));
        cases.push(Case::single(format!("bessel_{}_{}", p.0, p.1), inputs, DOMAIN, move |cfg| {
            let phi = psi(&BoundaryFunction::bessel(p.0, p.1))?.automorphic();
            let r = constant_term_symmetry_check(&phi, &symmetry_ts(), &cfg.fd()).map_err(err)?;
            Ok((c(0.0, 0.0), c(r.deviation, 0.0), r.deviation))
        }));
    }
    cases.push(Case::single(
        "cusp_term",
        "pseudo-Eisenstein of y·exp(-(y+1/y)) + y^(1/2) at the cusp, t = 0, 0.5, ..., 10",
        DOMAIN,
        |cfg| {
            let f = BoundaryFunction::new(
                |y| Complex64::new(y * (-y - 1.0 / y).exp(), 0.0),
                &[CuspTerm { exponent: c(-0.5, 0.0), coefficient: c(1.0, 0.0) }],
            );
            let r = constant_term_symmetry_check(&psi(&f)?.automorphic(), &symmetry_ts(), &cfg.fd()).map_err(err)?;
            Ok((c(0.0, 0.0), c(r.deviation, 0.0), r.deviation))
        },
    ));
    cases.push(Case::single("eisenstein", "E(z, 0.3+2i)", DOMAIN, |cfg| {
        let phi = EisensteinSeries::new(c(0.3, 2.0)).map_err(err)?.automorphic();
        let r = constant_term_symmetry_check(&phi, &[], &cfg.fd()).map_err(err)?;
        Ok((c(0.0, 0.0), c(r.deviation, 0.0), r.deviation))
    }));
    cases
}

/// ½∫_F Ψf₁·Ψf₂ dμ on the configured grid, raised to the cusp height.
fn direct_pairing(f1: &BoundaryFunction, f2: &BoundaryFunction, height_tol: f64, cfg: &RunConfig) -> Result<Complex64, String> {
    let (p1, p2) = (psi(f1)?, psi(f2)?);
    let y_max = f1.cusp_height(height_tol).max(f2.cusp_height(height_tol)).max(cfg.fd_y_max);
    let grid = cfg.fd().with_y_max(y_max);
    let eval = |p: &PseudoEisenstein, z| match cfg.coset_bound {
        Some(b) => p.eval_bounded(z, b).unwrap_or(c(f64::NAN, f64::NAN)),
        None => p.eval(z),
    };
    Ok(0.5 * fd_integrate(|z| eval(&p1, z) * eval(&p2, z), &grid, None).map_err(err)?)
}

/// ½∫_F Ψf dμ.
fn projection(f: &BoundaryFunction, cfg: &RunConfig) -> Result<Complex64, String> {
    let p = psi(f)?;
    let grid = cfg.fd().with_y_max(f.cusp_height(1e-16).max(cfg.fd_y_max));
    Ok(0.5 * fd_integrate(|z| p.eval(z), &grid, None).map_err(err)?)
}

pub fn rank_one_plancherel() -> Vec<Case> {
    let corpus = bessel_corpus();
    let pairs = [(corpus[0], corpus[1]), (corpus[0], corpus[2]), (corpus[1], corpus[1]), (corpus[2], corpus[2])];
    let mut cases = Vec::new();
    for (a, b) in pairs {
        let inputs = format!("f1 = {}, f2 = {}", bessel_name(a), bessel_name(b));
        cases.push(Case::new(format!("pair_{}_{}__{}_{}", a.0, a.1, b.0, b.1), inputs, DOMAIN, move |cfg| {
            let (f1, f2) = (BoundaryFunction::bessel(a.0, a.1), BoundaryFunction::bessel(b.0, b.1));
            let spectral =
                rank_one_plancherel_with(&psi(&f1)?.automorphic(), &psi(&f2)?.automorphic(), &cfg.contour()).map_err(err)?;
            let direct = direct_pairing(&f1, &f2, 1e-16, cfg)?;
            let id = format!("pair_{}_{}__{}_{}", a.0, a.1, b.0, b.1);
            let residual = spectral.term("residual");
            Ok(vec![
                Outcome::compare(format!("{id}.total"), direct, spectral.value()),
                Outcome::compare(
                    format!("{id}.parts"),
                    spectral.value(),
                    spectral.term("continuous") + residual,
                )
                .with_note(format!("residual term {}", fmt_c(residual))),
            ])
        }));
    }
    cases.push(Case::single(
        "residual_closed_form",
        "residual term for f1 = y·exp(-(y+1/y)), f2 = y²·exp(-0.7(y+1/y)) against (6/π)K_0(2)K_1(1.4)",
        ANALYTIC,
        |cfg| {
            let (f1, f2) = (BoundaryFunction::bessel(1.0, 1.0), BoundaryFunction::bessel(2.0, 0.7));
            let spectral =
                rank_one_plancherel_with(&psi(&f1)?.automorphic(), &psi(&f2)?.automorphic(), &cfg.contour()).map_err(err)?;
            let closed = 6.0 / PI * kbessel(c(0.0, 0.0), 2.0).value * kbessel(c(1.0, 0.0), 1.4).value;
            let residual = spectral.term("residual");
            Ok((closed, residual, (residual - closed).norm()))
        },
    ));
    cases.push(Case::single(
        "residual_projection",
        "residual term against the product of projections onto constants, ⟨Ψf1,1⟩⟨Ψf2,1⟩/(π/6)",
        DOMAIN,
        |cfg| {
            let (f1, f2) = (BoundaryFunction::bessel(1.0, 1.0), BoundaryFunction::bessel(2.0, 0.7));
            let spectral =
                rank_one_plancherel_with(&psi(&f1)?.automorphic(), &psi(&f2)?.automorphic(), &cfg.contour()).map_err(err)?;
            let oracle = projection(&f1, cfg)? * projection(&f2, cfg)? / (PI / 6.0);
            let residual = spectral.term("residual");
            Ok((oracle, residual, (residual - oracle).norm()))
        },
    ));
    cases.push(Case::single(
        "cusp_exponent_pair",
        "f1 = y·exp(-(y+1/y)), f2 = y²·exp(-0.7(y+1/y)) + y^(1/2) at the cusp",
        DOMAIN,
        |cfg| {
            let f1 = BoundaryFunction::bessel(1.0, 1.0);
            let f2 = BoundaryFunction::new(
                |y| Complex64::new(y * y * (-0.7 * (y + 1.0 / y)).exp(), 0.0),
                &[CuspTerm { exponent: c(0.5, 0.0), coefficient: c(1.0, 0.0) }],
            );
            let spectral =
                rank_one_plancherel_with(&psi(&f1)?.automorphic(), &psi(&f2)?.automorphic(), &cfg.contour()).map_err(err)?;
            let p1 = psi(&f1)?;
            let p2 = psi(&f2)?;
            let grid = cfg.fd().with_y_max(f1.cusp_height(1e-18).max(cfg.fd_y_max));
            let direct = 0.5 * fd_integrate(|z| p1.eval(z) * p2.eval(z), &grid, None).map_err(err)?;
            Ok((direct, spectral.value(), (spectral.value() - direct).norm()))
        },
    ));
    cases
}
