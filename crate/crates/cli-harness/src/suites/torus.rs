use std::f64::consts::PI;
use std::sync::Arc;

use meromorphic_core::{Charge, ChargedMeromorphicFunction};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use special_functions::quad::GaussLegendre;
use torus_calculus::{
    default_corpus, mellin, mellin_derivative_defect, plancherel_breakdown, regularized_inner_product_direct,
    AsymptoticallyFiniteFunction, Carrier, ExponentTerm, Placement, PreparedContour, Side,
};

use super::{c, err, fmt_c, Case, Outcome};
use crate::config::{RunConfig, ANALYTIC, QUADRATURE};

type Aff = AsymptoticallyFiniteFunction;
type Builder = Arc<dyn Fn() -> Aff + Send + Sync>;

fn log_gaussian(x: f64) -> Complex64 {
    c((-0.5 * x.ln() * x.ln()).exp(), 0.0)
}

fn sharp_zero(e: f64) -> Aff {
    Aff::from_terms(vec![ExponentTerm::monomial(c(e, 0.0), c(1.0, 0.0), Side::Zero, Carrier::Sharp)])
}

fn smooth_zero(e: f64) -> Aff {
    Aff::from_terms(vec![ExponentTerm::monomial(c(e, 0.0), c(1.0, 0.0), Side::Zero, Carrier::Smooth(1.0))])
}

fn with_gaussian_core(terms: Vec<ExponentTerm>) -> Aff {
    Aff::new(log_gaussian, terms)
}

fn two_sided() -> Aff {
    with_gaussian_core(vec![
        ExponentTerm::monomial(c(0.4, 0.0), c(1.0, 0.0), Side::Zero, Carrier::Smooth(1.0)),
        ExponentTerm::monomial(c(-0.3, 0.0), c(2.0, 0.0), Side::Infinity, Carrier::Smooth(1.0)),
    ])
}

fn corpus_function(name: &'static str) -> Builder {
    Arc::new(move || {
        default_corpus().into_iter().find(|s| s.name == name).expect("corpus entry").build()
    })
}

/// |direct − spectral| for one admissible pair.
fn direct_vs_spectral(id: &str, inputs: String, f1: Builder, f2: Builder, sigma: f64) -> Case {
    Case::single(id, inputs, QUADRATURE, move |cfg| {
        let (a, b) = (f1(), f2());
        let direct = regularized_inner_product_direct(&a, &b).map_err(err)?;
        let spectral = plancherel_breakdown(&a, &b, sigma, &cfg.contour()).map_err(err)?.value();
        Ok((direct, spectral, (direct - spectral).norm()))
    })
}

pub fn plancherel(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = vec![
        Case::single(
            "worked_pair_exact",
            "f1 = x·1_(0,1], f2 = x^(-1/2)·1_(0,1], sigma = 0",
            QUADRATURE,
            |cfg| {
                let v = plancherel_breakdown(&sharp_zero(1.0), &sharp_zero(-0.5), 0.0, &cfg.contour()).map_err(err)?;
                Ok((c(2.0, 0.0), v.value(), (v.value() - 2.0).norm()))
            },
        ),
        direct_vs_spectral(
            "worked_pair_direct",
            "f1 = x·1_(0,1], f2 = x^(-1/2)·1_(0,1], sigma = 0".into(),
            Arc::new(|| sharp_zero(1.0)),
            Arc::new(|| sharp_zero(-0.5)),
            0.0,
        ),
        direct_vs_spectral(
            "smoothed_worked_pair",
            "smooth carriers, exponents 1 and -1/2 at 0, sigma = 0".into(),
            Arc::new(|| smooth_zero(1.0)),
            Arc::new(|| smooth_zero(-0.5)),
            0.0,
        ),
        Case::single("gaussian_pair", "f1 = f2 = exp(-log²x/2), sigma = 0", QUADRATURE, |cfg| {
            let g = with_gaussian_core(vec![]);
            let v = plancherel_breakdown(&g, &g, 0.0, &cfg.contour()).map_err(err)?.value();
            let exact = c(PI.sqrt(), 0.0);
            Ok((exact, v, (v - exact).norm()))
        }),
        direct_vs_spectral(
            "two_sided_pair",
            "gaussian core + 0.4 at 0 + 2·x^(-0.3) at inf against smooth 0.6 at 0, sigma = 0".into(),
            Arc::new(two_sided),
            Arc::new(|| smooth_zero(0.6)),
            0.0,
        ),
        direct_vs_spectral(
            "bessel_log_pair",
            "corpus bessel_core_two_sided against gaussian_with_log_term, sigma = 0.1".into(),
            corpus_function("bessel_core_two_sided"),
            corpus_function("gaussian_with_log_term"),
            0.1,
        ),
        Case::single(
            "sigma_independence",
            "two_sided_pair at sigma in {-0.8, -0.45, 0.2, 0.7} against sigma = 0",
            ANALYTIC,
            |cfg| {
                let (a, b) = (two_sided(), smooth_zero(0.6));
                let base = plancherel_breakdown(&a, &b, 0.0, &cfg.contour()).map_err(err)?.value();
                let mut worst = (base, 0.0);
                for sigma in [-0.8, -0.45, 0.2, 0.7] {
                    let v = plancherel_breakdown(&a, &b, sigma, &cfg.contour()).map_err(err)?.value();
                    if (v - base).norm() >= worst.1 {
                        worst = (v, (v - base).norm());
                    }
                }
                Ok((base, worst.0, worst.1))
            },
        ),
    ];

    let rule = [
        ("superunitary_left", c(-0.4, 0.3), Side::Zero, Some(Placement::Left)),
        ("unitary_zero_side", c(0.4, 0.0), Side::Zero, None),
        ("superunitary_right", c(0.7, -1.0), Side::Infinity, Some(Placement::Right)),
        ("unitary_infinity_side", c(-0.7, 0.0), Side::Infinity, None),
        ("on_line", c(0.0, 2.0), Side::Zero, Some(Placement::OnLine)),
    ];
    for (name, e, side, expect) in rule {
        let inputs = format!("gaussian core + x^({}) at {side:?} against gaussian, sigma = 0", fmt_c(e));
        cases.push(Case::new(format!("residue_rule_{name}"), inputs, QUADRATURE, move |cfg| {
            let f = with_gaussian_core(vec![ExponentTerm::monomial(e, c(1.0, 0.0), side, Carrier::Smooth(1.0))]);
            let g = with_gaussian_core(vec![]);
            let b = plancherel_breakdown(&f, &g, 0.0, &cfg.contour()).map_err(err)?;
            let expected_terms = usize::from(expect.is_some());
            let mut mismatches = b.residues.len().abs_diff(expected_terms);
            if let (Some(p), Some(r)) = (expect, b.residues.first()) {
                mismatches += usize::from(r.placement != p);
            }
            let direct = regularized_inner_product_direct(&f, &g).map_err(err)?;
            Ok(vec![
                Outcome::structural(
                    format!("residue_rule_{name}.terms"),
                    expected_terms as f64,
                    b.residues.len() as f64,
                    mismatches,
                ),
                Outcome::compare(format!("residue_rule_{name}.value"), direct, b.value()),
            ])
        }));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..cfg.random_pairs {
        let (e1, e2, sigma) = loop {
            let e1: f64 = rng.gen_range(-1.0..1.0);
            let e2: f64 = rng.gen_range(-1.0..1.0);
            let sigma: f64 = rng.gen_range(-0.9..0.9);
            if (e1 + e2).abs() > 0.05 && (sigma - e1).abs() > 0.05 && (sigma + e2).abs() > 0.05 {
                break (e1, e2, sigma);
            }
        };
        let f1: Builder = Arc::new(move || {
            with_gaussian_core(vec![ExponentTerm::monomial(c(e1, 0.0), c(1.0, 0.0), Side::Zero, Carrier::Smooth(1.0))])
        });
        let f2: Builder = Arc::new(move || {
            Aff::new(
                |x: f64| c((-x - 1.0 / x).exp(), 0.0),
                vec![ExponentTerm::monomial(c(e2, 0.0), c(1.0, 0.0), Side::Zero, Carrier::Smooth(1.0))],
            )
        });
        let inputs = format!("gaussian + x^{e1} at 0 against exp(-x-1/x) + x^{e2} at 0, sigma = {sigma}");
        cases.push(direct_vs_spectral(&format!("random_pair_{k}"), inputs, f1, f2, sigma));
    }
    cases
}

fn log_grid() -> Vec<f64> {
    (0..50).map(|k| (-3.0 + 6.0 * k as f64 / 49.0).exp()).collect()
}

fn sup_roundtrip(f: &Aff, sigma: f64, cfg: &RunConfig) -> Result<f64, String> {
    let m = mellin(f).map_err(err)?;
    let prepared = PreparedContour::new(&m, sigma, &cfg.contour()).map_err(err)?;
    let mut worst: f64 = 0.0;
    for x in log_grid() {
        let v = prepared.breakdown(x).map_err(err)?.value();
        worst = worst.max((v - f.eval(x)).norm());
    }
    Ok(worst)
}

pub fn mellin_roundtrip(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for spec in default_corpus().into_iter().filter(|s| s.terms.iter().all(|t| !t.carrier.is_sharp())) {
        for sigma in [-0.6, 0.1, 1.3] {
            let spec = spec.clone();
            let inputs = format!("{} on Re s = {sigma}, 50-point log grid on [e^-3, e^3]", spec.name);
            cases.push(Case::single(format!("{}_sigma_{sigma}", spec.name), inputs, QUADRATURE, move |cfg| {
                let sup = sup_roundtrip(&spec.build(), sigma, cfg)?;
                Ok((c(0.0, 0.0), c(sup, 0.0), sup))
            }));
        }
    }

    cases.push(Case::new("principal_value_indicator", "F = -1/s with a + pole on Re s = 0", ANALYTIC, |cfg| {
        let f = ChargedMeromorphicFunction::pole_term(c(0.0, 0.0), 1, c(-1.0, 0.0), Charge::Plus);
        let prepared = PreparedContour::new(&f, 0.0, &cfg.contour()).map_err(err)?;
        let inside = prepared.breakdown(0.5).map_err(err)?;
        let outside = prepared.breakdown(2.0).map_err(err)?.value();
        Ok(vec![
            Outcome::compare("principal_value_indicator.inside", c(1.0, 0.0), inside.value()),
            Outcome::compare(
                "principal_value_indicator.half_residue",
                c(0.5, 0.0),
                inside.contribution(c(0.0, 0.0), Placement::OnLine),
            ),
            Outcome::compare("principal_value_indicator.outside", c(0.0, 0.0), outside),
        ])
    }));
    cases.push(Case::single(
        "principal_value_smooth",
        "smooth carrier with exponent 0 at 0, inverted on Re s = 0 against erfc(log x)/2",
        QUADRATURE,
        |cfg| {
            let f = smooth_zero(0.0);
            let m = mellin(&f).map_err(err)?;
            let prepared = PreparedContour::new(&m, 0.0, &cfg.contour()).map_err(err)?;
            let mut worst: f64 = 0.0;
            for x in log_grid() {
                let v = prepared.breakdown(x).map_err(err)?.value();
                worst = worst.max((v - c(0.5 * erfc(x.ln()), 0.0)).norm());
            }
            Ok((c(0.0, 0.0), c(worst, 0.0), worst))
        },
    ));

    cases.push(Case::new(
        "derivative_identity",
        "M(x d/dx - s0) f (s) = (s - s0) Mf(s), s0 = 0.2+0.1i",
        QUADRATURE,
        |_| {
            let f = Aff::new(
                |x: f64| c((-0.5 * x.ln() * x.ln()).exp() * (1.0 + x.ln()), 0.0),
                vec![
                    ExponentTerm::new(c(0.5, 1.0), vec![c(1.0, 0.0), c(-0.5, 0.0)], Side::Zero, Carrier::Smooth(1.0)),
                    ExponentTerm::monomial(c(-0.25, 0.0), c(2.0, 0.0), Side::Infinity, Carrier::Smooth(1.5)),
                ],
            );
            [c(0.1, 0.0), c(-0.3, 4.0), c(0.8, -2.0)]
                .into_iter()
                .map(|s| {
                    let d = mellin_derivative_defect(&f, c(0.2, 0.1), s).map_err(err)?;
                    Ok(Outcome::defect(format!("derivative_identity.s={}", fmt_c(s)), d.norm()))
                })
                .collect()
        },
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    for k in 0..cfg.random_pairs {
        let e: f64 = rng.gen_range(-1.5..1.5);
        let im: f64 = rng.gen_range(-3.0..3.0);
        let width: f64 = rng.gen_range(0.7..2.0);
        let side = if rng.gen_bool(0.5) { Side::Zero } else { Side::Infinity };
        let sigma = loop {
            let s: f64 = rng.gen_range(-1.0..1.0);
            if (s - e).abs() > 0.05 {
                break s;
            }
        };
        let inputs = format!("gaussian + x^({e}{im:+}i) at {side:?}, smooth width {width}, Re s = {sigma}");
        cases.push(Case::single(format!("random_term_{k}"), inputs, QUADRATURE, move |cfg| {
            let f = with_gaussian_core(vec![ExponentTerm::monomial(c(e, im), c(1.0, 0.0), side, Carrier::Smooth(width))]);
            let sup = sup_roundtrip(&f, sigma, cfg)?;
            Ok((c(0.0, 0.0), c(sup, 0.0), sup))
        }));
    }
    cases
}

/// erfc by composite Gauss–Legendre on [x, x + 12].
fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    let gl = GaussLegendre::new(20);
    2.0 / PI.sqrt() * gl.composite(x, x + 12.0, 48, |t| c((-t * t).exp(), 0.0)).re
}
