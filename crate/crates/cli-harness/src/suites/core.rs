use std::f64::consts::PI;

use meromorphic_core::{
    charged_product, negate_argument, polar_consistency_check, Charge, ChargeSelector, ChargedLaurent,
    ChargedMeromorphicFunction, DecayClass, Strip,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use special_functions::{c_log_derivative, c_log_derivative_via_xi, hc_bound_check, intertwining_c, xi, HcGrid};

use super::{c, err, fmt_c, Case, Outcome};
use crate::config::{RunConfig, ANALYTIC, QUADRATURE};

/// 1/(a − s): + pole at a with residue −1.
fn one_over_a_minus_s(a: f64) -> ChargedMeromorphicFunction {
    ChargedMeromorphicFunction::pole_term(c(a, 0.0), 1, c(-1.0, 0.0), Charge::Plus)
}

fn polar(id: &str, inputs: &str, build: fn() -> (ChargedMeromorphicFunction, ChargedMeromorphicFunction)) -> Case {
    Case::single(id, inputs, ANALYTIC, move |_| {
        let (h1, h2) = build();
        let r = polar_consistency_check(&h1, &h2).map_err(err)?;
        Ok((c(0.0, 0.0), c(r.max_deviation, 0.0), r.max_deviation))
    })
}

pub fn charged_core(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = vec![
        polar("polar_distinct_points", "1/(s-1/2) (-) times 1/(1-s) (+)", || {
            (ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 1, c(1.0, 0.0), Charge::Minus), one_over_a_minus_s(1.0))
        }),
        polar("polar_double_pole", "1/(1-s) (+) squared", || (one_over_a_minus_s(1.0), one_over_a_minus_s(1.0))),
        polar("polar_transcendental", "e^s/(s-1/2)² (-) times e^(s²)/(s-1/2) (-)", || {
            let e = 0.5f64.exp();
            let mut l = ChargedLaurent::new(c(0.5, 0.0));
            l.minus = vec![c(e, 0.0), c(e, 0.0)];
            let h1 = ChargedMeromorphicFunction::new(
                |s: Complex64| s.exp() / ((s - 0.5) * (s - 0.5)),
                vec![l],
                Strip::PLANE,
                DecayClass::Unknown,
            );
            let h2 = ChargedMeromorphicFunction::new(
                |s: Complex64| (s * s).exp() / (s - 0.5),
                vec![ChargedLaurent::single(c(0.5, 0.0), 1, c(0.25f64.exp(), 0.0), Charge::Minus)],
                Strip::PLANE,
                DecayClass::Unknown,
            );
            (h1, h2)
        }),
        Case::new("partial_fractions", "1/(s-1/2) (-) times 1/(1-s) (+) = 2/(s-1/2) - 2/(s-1)", ANALYTIC, |_| {
            let h1 = ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 1, c(1.0, 0.0), Charge::Minus);
            let h = charged_product(&h1, &one_over_a_minus_s(1.0)).map_err(err)?;
            Ok(vec![
                Outcome::compare("partial_fractions.minus_at_half", c(2.0, 0.0), h.residue(c(0.5, 0.0), ChargeSelector::Minus)),
                Outcome::compare("partial_fractions.plus_at_one", c(-2.0, 0.0), h.residue(c(1.0, 0.0), ChargeSelector::Plus)),
                Outcome::compare("partial_fractions.minus_at_one", c(0.0, 0.0), h.residue(c(1.0, 0.0), ChargeSelector::Minus)),
            ])
        }),
        Case::new("negation_involution", "h(s) = e^(s²)/(s-0.7) (+), negated twice", ANALYTIC, |_| {
            let h = ChargedMeromorphicFunction::new(
                |s: Complex64| (s * s).exp() / (s - 0.7),
                vec![ChargedLaurent::single(c(0.7, 0.0), 1, c(0.49f64.exp(), 0.0), Charge::Plus)],
                Strip::PLANE,
                DecayClass::Unknown,
            );
            let once = negate_argument(&h);
            let twice = negate_argument(&once);
            let s = c(0.3, 1.2);
            let swapped = once.pole_at(c(-0.7, 0.0)).map_or(0.0, |p| p.residue(ChargeSelector::Minus).re);
            Ok(vec![
                Outcome::compare("negation_involution.value", h.eval(s), twice.eval(s)),
                Outcome::compare("negation_involution.reflected", h.eval(-s), once.eval(s)),
                // residue of h(−s) at −0.7 is −e^{0.49}, carried with the opposite charge
                Outcome::compare("negation_involution.charge_swap", c(-(0.49f64.exp()), 0.0), c(swapped, 0.0)),
            ])
        }),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5851_f42d_4c95_7f2d);
    for k in 0..cfg.random_pairs.max(1) * 4 {
        let mut draw = || {
            (
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(1..3usize),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_bool(0.5),
            )
        };
        let a: (f64, f64, usize, f64, f64, bool) = draw();
        let mut b = draw();
        if rng.gen_bool(0.5) {
            // share the location and the charge
            (b.0, b.1, b.5) = (a.0, a.1, a.5);
        }
        let build = |p: (f64, f64, usize, f64, f64, bool)| {
            let charge = if p.5 { Charge::Plus } else { Charge::Minus };
            ChargedMeromorphicFunction::pole_term(c(p.0, p.1), p.2, c(p.3, p.4), charge)
        };
        let inputs = format!("random pole terms {a:?} and {b:?} (location re, im, order, coefficient re, im, plus)");
        cases.push(Case::single(format!("random_polar_{k}"), inputs, ANALYTIC, move |_| {
            let r = polar_consistency_check(&build(a), &build(b)).map_err(err)?;
            Ok((c(0.0, 0.0), c(r.max_deviation, 0.0), r.max_deviation))
        }));
    }
    cases
}

fn xi_grid() -> Vec<Complex64> {
    let mut g = Vec::new();
    for sigma in [-1.5, -0.5, 0.25, 0.5, 0.8, 1.7, 2.5] {
        for t in [0.0, 0.5, 3.0, 10.0, 14.134725, 25.0] {
            g.push(c(sigma, t));
        }
    }
    g
}

fn c_grid() -> Vec<Complex64> {
    let mut g = Vec::new();
    for sigma in [-0.7, -0.3, 0.0, 0.4, 0.9] {
        for t in [0.5, 2.0, 7.0, 20.0] {
            g.push(c(sigma, t));
            g.push(c(sigma, -t));
        }
    }
    g
}

fn worst_over(grid: Vec<Complex64>, f: impl Fn(Complex64) -> Result<f64, String>) -> Result<(Complex64, f64), String> {
    let mut worst = (grid[0], 0.0);
    for s in grid {
        let d = f(s)?;
        if d >= worst.1 {
            worst = (s, d);
        }
    }
    Ok(worst)
}

pub fn functional_equations() -> Vec<Case> {
    vec![
        Case::new(
            "xi_reflection",
            "max |xi(s) - xi(1-s)| over sigma in {-1.5,-0.5,0.25,0.5,0.8,1.7,2.5} x t in {0,0.5,3,10,14.13,25}",
            1e-10,
            |_| {
                let (at, d) = worst_over(xi_grid(), |s| Ok((xi(s).map_err(err)? - xi(1.0 - s).map_err(err)?).norm()))?;
                Ok(vec![Outcome::defect("xi_reflection", d).with_note(format!("worst at s = {}", fmt_c(at)))])
            },
        ),
        Case::new(
            "c_unitarity",
            "max |c(s)c(-s) - 1| over sigma in {-0.7,-0.3,0,0.4,0.9} x t in ±{0.5,2,7,20}",
            1e-9,
            |_| {
                let (at, d) = worst_over(c_grid(), |s| {
                    Ok((intertwining_c(s).map_err(err)? * intertwining_c(-s).map_err(err)? - 1.0).norm())
                })?;
                Ok(vec![Outcome::defect("c_unitarity", d).with_note(format!("worst at s = {}", fmt_c(at)))])
            },
        ),
        Case::single("c_at_zero", "c(0)", ANALYTIC, |_| {
            let v = intertwining_c(c(0.0, 0.0)).map_err(err)?;
            Ok((c(-1.0, 0.0), v, (v + 1.0).norm()))
        }),
        Case::single("c_residue_at_one", "(1/2πi)∮ c(s) ds on |s-1| = 1/4, 64 nodes", QUADRATURE, |_| {
            let m = 64;
            let r = 0.25;
            let mut acc = c(0.0, 0.0);
            for j in 0..m {
                let e = Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / m as f64);
                acc += intertwining_c(1.0 + e).map_err(err)? * e;
            }
            let residue = acc / m as f64;
            let expected = c(6.0 / PI, 0.0);
            Ok((expected, residue, (residue - expected).norm()))
        }),
        Case::new(
            "c_log_derivative_paths",
            "c'/c by differencing c against xi'/xi(s) - xi'/xi(s+1) on Re s = 0",
            QUADRATURE,
            |_| {
                [0.5, 2.0, 9.0]
                    .into_iter()
                    .map(|t| {
                        let s = c(0.0, t);
                        let a = c_log_derivative(s).map_err(err)?;
                        let b = c_log_derivative_via_xi(s).map_err(err)?;
                        Ok(Outcome::compare(format!("c_log_derivative_paths.t={t}"), b, a))
                    })
                    .collect()
            },
        ),
    ]
}

pub fn hc_bound() -> Vec<Case> {
    vec![Case::new(
        "strip_bound",
        "|c(σ+it)| <= e^(2Tσ)(1+2|σ/t|), T = 5, 0 <= σ <= 2 (41 rows), 0.1 <= |t| <= 40 step 0.1",
        ANALYTIC,
        |_| {
            let r = hc_bound_check(5.0, &HcGrid::default());
            if r.samples == 0 {
                return Err("no grid point could be evaluated".into());
            }
            Ok(vec![
                Outcome::at_most("strip_bound.max_ratio", 1.0, r.max_ratio),
                Outcome::at_most("strip_bound.minimal_t", 5.0, r.minimal_t)
                    .with_note(format!("minimal T attained at s = {}", fmt_c(r.worst_point))),
            ])
        },
    )]
}
