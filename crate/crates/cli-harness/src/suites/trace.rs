use std::f64::consts::PI;

use num_complex::Complex64;
use special_functions::quad::GaussLegendre;
use special_functions::xi;
use trace_formula::{
    gaussian, identity_term, kernel_relations_at, orbital_integral, polynomial_gaussian, tate_zeta as tate_zeta_of,
    tate_zeta_term, tf_minus1_geometric, tf_minus1_spectral, tf_minus1_spectral_on, two_term_laurent_kernel,
    unipotent_profile, weight_v, weighted_orbital_integral, FitConfig, GeometricTermConfig, SphericalTestFunction,
    N_MEASURE,
};

use super::{c, err, Case, Outcome};
use crate::config::{ANALYTIC, CROSS_SIDE, DOMAIN, QUADRATURE};

type Family = (&'static str, fn(f64) -> Result<SphericalTestFunction, trace_formula::TraceError>);

const GAUSSIAN: Family = ("gaussian", gaussian);
const POLY_GAUSSIAN: Family = ("polynomial_gaussian", polynomial_gaussian);

fn build(f: Family, w: f64) -> Result<SphericalTestFunction, String> {
    (f.1)(w).map_err(err)
}

fn label(f: Family, w: f64) -> String {
    format!("{}({w})", f.0)
}

/// Composite Gauss–Legendre of a real integrand.
fn integrate(a: f64, b: f64, panel: f64, f: impl Fn(f64) -> f64) -> f64 {
    let gl = GaussLegendre::new(20);
    let panels = ((b - a) / panel).ceil().max(1.0) as usize;
    gl.composite(a, b, panels, |x| c(f(x), 0.0)).re
}

pub fn kernel_relations() -> Vec<Case> {
    let mut cases = Vec::new();
    for (fam, w) in [(GAUSSIAN, 0.5), (GAUSSIAN, 0.8), (POLY_GAUSSIAN, 0.5)] {
        let id = format!("{}_{w}", fam.0);
        let inputs = format!("h = {}, s = it for t in {{0.3, 1, 2.5, 5, 9}}", label(fam, w));
        let own = id.clone();
        cases.push(Case::new(id, inputs, ANALYTIC, move |_| {
            let t = build(fam, w)?;
            let mut worst = [0.0f64; 3];
            for tt in [0.3, 1.0, 2.5, 5.0, 9.0] {
                let r = kernel_relations_at(&t, c(0.0, tt)).map_err(err)?;
                worst[0] = worst[0].max(r.diag_to_diag);
                worst[1] = worst[1].max(r.adiag_to_adiag);
                worst[2] = worst[2].max(r.diag_to_adiag);
            }
            Ok(vec![
                Outcome::defect(format!("{own}.diag_to_diag"), worst[0]),
                Outcome::defect(format!("{own}.adiag_to_adiag"), worst[1]),
                Outcome::defect(format!("{own}.diag_to_adiag"), worst[2]),
            ])
        }));
    }
    cases
}

fn tf_corpus() -> [((Family, f64), (Family, f64)); 3] {
    [((GAUSSIAN, 0.5), (GAUSSIAN, 0.5)), ((GAUSSIAN, 0.4), (GAUSSIAN, 0.6)), ((GAUSSIAN, 0.8), (POLY_GAUSSIAN, 0.5))]
}

pub fn tf_minus1() -> Vec<Case> {
    let mut cases = vec![Case::single(
        "gaussian_value",
        "h1 = h2 = gaussian(0.5): -(1/2π)∫exp(-t²/2)dt = -1/√(2π)",
        QUADRATURE,
        |_| {
            let t = build(GAUSSIAN, 0.5)?;
            let v = tf_minus1_spectral(&t, &t).map_err(err)?;
            let exact = c(-1.0 / (2.0 * PI).sqrt(), 0.0);
            Ok((exact, v, (v - exact).norm()))
        },
    )];
    for (k, ((f1, w1), (f2, w2))) in tf_corpus().into_iter().enumerate() {
        let id = format!("triangle_{k}");
        let inputs = format!(
            "h1 = {}, h2 = {}; truncation fit on T = 2..6, spectral integral, geometric sum with α inserted",
            label(f1, w1),
            label(f2, w2)
        );
        let own = id.clone();
        cases.push(Case::new(id, inputs, CROSS_SIDE, move |_| {
            let (t1, t2) = (build(f1, w1)?, build(f2, w2)?);
            let config = GeometricTermConfig::default();
            let spectral = tf_minus1_spectral(&t1, &t2).map_err(err)?;
            let geometric = tf_minus1_geometric(&t1, &t2, &config).map_err(err)?.value;
            let fit = two_term_laurent_kernel(&t1, &t2, &FitConfig::default()).map_err(err)?.laurent.a_minus1;
            Ok(vec![
                Outcome::compare(format!("{own}.fit_vs_spectral"), spectral, fit),
                Outcome::compare(format!("{own}.spectral_vs_geometric"), spectral, geometric),
                Outcome::compare(format!("{own}.fit_vs_geometric"), geometric, fit),
            ])
        }));
    }
    cases.push(Case::single(
        "contour_shift",
        "h1 = gaussian(0.4), h2 = gaussian(0.6): integral on Re s = 0.3 against Re s = 0",
        QUADRATURE,
        |_| {
            let (t1, t2) = (build(GAUSSIAN, 0.4)?, build(GAUSSIAN, 0.6)?);
            let base = tf_minus1_spectral(&t1, &t2).map_err(err)?;
            let shifted = tf_minus1_spectral_on(&t1, &t2, 0.3).map_err(err)?;
            Ok((base, shifted, (shifted - base).norm()))
        },
    ));
    cases
}

/// Length of {u : Im(a_u n_t·i) < 1 and Im(w₀a_u n_t·i) < 1}, endpoints by bisection.
fn weight_by_bisection(t: f64) -> f64 {
    let z = |u: f64| Complex64::new(t, 1.0) * (2.0 * u).exp();
    let below = |u: f64| z(u).im < 1.0;
    let flipped_below = |u: f64| (-1.0 / z(u)).im < 1.0;
    let bisect = |pred: &dyn Fn(f64) -> bool, mut lo: f64, mut hi: f64| {
        // pred(lo) != pred(hi)
        let at_lo = pred(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if pred(mid) == at_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let upper = bisect(&below, -20.0, 20.0);
    let lower = bisect(&flipped_below, -20.0, 20.0);
    (upper - lower).max(0.0)
}

/// Orbital integral in geodesic-polar coordinates around iℝ₊: z = re^{iθ},
/// measure 2dθ/sin²θ on θ ∈ (0, π).
fn orbital_polar(t: &SphericalTestFunction, a: f64) -> f64 {
    let cc = (a - 1.0).powi(2) / (4.0 * a);
    2.0 * integrate(1e-9, PI - 1e-9, PI / 400.0, |th| {
        let s2 = th.sin().powi(2);
        t.k_point_pair(cc / s2).re / s2
    })
}

pub fn geometric_terms() -> Vec<Case> {
    let mut cases = vec![Case::new("weight_volume", "v(n_t) as a volume in A, t in {0.5, 1, 2, 7}", ANALYTIC, |_| {
        Ok([0.5, 1.0, 2.0, 7.0]
            .into_iter()
            .map(|t| Outcome::compare(format!("weight_volume.t={t}"), c(weight_by_bisection(t), 0.0), c(weight_v(t), 0.0)))
            .collect())
    })];
    cases.push(Case::new(
        "orbital_polar",
        "h = gaussian(0.5), α in {3, 1.5, 10, 0.25}; geodesic-polar quadrature",
        QUADRATURE,
        |_| {
            let t = build(GAUSSIAN, 0.5)?;
            [3.0, 1.5, 10.0, 0.25]
                .into_iter()
                .map(|a| {
                    let got = orbital_integral(&t, a).map_err(err)?;
                    Ok(Outcome::compare(format!("orbital_polar.alpha={a}"), c(orbital_polar(&t, a), 0.0), got))
                })
                .collect()
        },
    ));
    cases.push(Case::new(
        "orbital_closed_form",
        "h = polynomial_gaussian(0.5), α in {2, 5, 40}: g(r)/(2 sinh r), r = log(α)/2",
        QUADRATURE,
        |_| {
            let t = build(POLY_GAUSSIAN, 0.5)?;
            [2.0, 5.0, 40.0]
                .into_iter()
                .map(|a: f64| {
                    let r = 0.5 * a.ln();
                    let expected = t.g(r) / (2.0 * r.sinh());
                    Ok(Outcome::compare(format!("orbital_closed_form.alpha={a}"), expected, orbital_integral(&t, a).map_err(err)?))
                })
                .collect()
        },
    ));
    cases.push(Case::new(
        "weighted_orbital",
        "h = gaussian(0.5), α in {4, -1}: ∫ k(c(1+x²)) v(x) dn by direct quadrature",
        QUADRATURE,
        |_| {
            let t = build(GAUSSIAN, 0.5)?;
            let direct = |cc: f64, plain: f64| {
                N_MEASURE * integrate(-200.0, 200.0, 0.25, |x| t.k_point_pair(cc + plain * x * x).re * weight_v(x))
            };
            let a: f64 = 4.0;
            let cc = (a - 1.0).powi(2) / (4.0 * a);
            let four = Outcome::compare(
                "weighted_orbital.alpha=4",
                c(direct(cc, cc), 0.0),
                weighted_orbital_integral(&t, a).map_err(err)?,
            );
            // α = −1 acts by z ↦ −z̄; the conjugated invariant is x², counted with weight ½
            let minus_one = Outcome::compare(
                "weighted_orbital.alpha=-1",
                c(0.5 * direct(0.0, 1.0), 0.0),
                weighted_orbital_integral(&t, -1.0).map_err(err)?,
            );
            Ok(vec![four, minus_one])
        },
    ));
    cases.push(Case::single(
        "identity_term",
        "h = gaussian(0.5): (π/3)k(0) against (1/4π)∫ r tanh(πr) h(2ir) dr",
        QUADRATURE,
        |_| {
            let t = build(GAUSSIAN, 0.5)?;
            let k0 = integrate(0.0, 40.0, 0.25, |r| 2.0 * r * (PI * r).tanh() * t.h(c(0.0, 2.0 * r)).re) / (4.0 * PI);
            let expected = c(PI / 3.0 * k0, 0.0);
            let got = identity_term(&t, &GeometricTermConfig::default());
            Ok((expected, got, (got - expected).norm()))
        },
    ));
    cases.push(Case::single(
        "unipotent_slice",
        "h1 = gaussian(0.5), h2 = gaussian(0.6): class α = 1 of the TF₋₁ sum against the Tate residue",
        DOMAIN,
        |_| {
            let (t1, t2) = (build(GAUSSIAN, 0.5)?, build(GAUSSIAN, 0.6)?);
            let phi = t1.convolution(&t2).map_err(err)?;
            let config = GeometricTermConfig::default();
            let geometric = tf_minus1_geometric(&t1, &t2, &config).map_err(err)?;
            let slice = geometric.classes.iter().find(|k| k.alpha == 1.0).ok_or("no α = 1 class")?.value;
            let profile = unipotent_profile(&phi);
            let tate = tate_zeta_term(&profile, config.vol_gm1).map_err(err)?;
            Ok((tate.laurent.a_minus1, slice, (slice - tate.laurent.a_minus1).norm()))
        },
    ));
    cases
}

fn gaussian_profile(x: f64) -> Complex64 {
    c((-PI * x * x).exp(), 0.0)
}

pub fn tate_zeta() -> Vec<Case> {
    let mut cases: Vec<Case> = [1.5, 2.0, 3.0]
        .into_iter()
        .map(|w| {
            Case::single(format!("gaussian_w={w}"), format!("Z(exp(-πx²) ⊗ lattice, {w}) against xi({w})"), ANALYTIC, move |_| {
                let w = c(w, 0.0);
                let z = tate_zeta_of(&gaussian_profile, w).map_err(err)?;
                let x = xi(w).map_err(err)?;
                Ok((x, z, (z - x).norm()))
            })
        })
        .collect();
    cases.push(Case::new(
        "gaussian_laurent",
        "Z(exp(-πx²), 1 - s/2) at s = 0 with Vol = 1; a0 against a Cauchy mean of xi(1 - s/2) on |s| = 1/2",
        ANALYTIC,
        |_| {
            let term = tate_zeta_term(&gaussian_profile, 1.0).map_err(err)?;
            let m = 128;
            let mut mean = c(0.0, 0.0);
            for j in 0..m {
                let s = Complex64::from_polar(0.5, 2.0 * PI * j as f64 / m as f64);
                mean += xi(1.0 - s / 2.0).map_err(err)?;
            }
            mean /= m as f64;
            Ok(vec![
                Outcome::compare("gaussian_laurent.a_minus1", c(-2.0, 0.0), term.laurent.a_minus1),
                Outcome::compare("gaussian_laurent.a0", mean, term.laurent.a0),
            ])
        },
    ));
    type Build = fn() -> Result<SphericalTestFunction, String>;
    let residues: [(&str, f64, Build); 2] = [
        ("unipotent_profile_vol_1", 1.0, || {
            let t = build(GAUSSIAN, 0.5)?;
            t.convolution(&t).map_err(err)
        }),
        ("unipotent_profile_vol_0.5", 0.5, || {
            let t = build(GAUSSIAN, 0.4)?;
            let u = build(POLY_GAUSSIAN, 0.5)?;
            t.convolution(&u).map_err(err)
        }),
    ];
    for (id, vol, make) in residues {
        let inputs = format!("F = k(x²/4) for the convolved test function, Vol([G_m]¹) = {vol}; -2·F̂(0)·Vol by direct quadrature");
        cases.push(Case::single(id, inputs, QUADRATURE, move |_| {
            let phi = make()?;
            let profile = unipotent_profile(&phi);
            let fhat0 = integrate(-200.0, 200.0, 0.25, |x| profile(x).re);
            let expected = c(-2.0 * fhat0 * vol, 0.0);
            let got = tate_zeta_term(&profile, vol).map_err(err)?.laurent.a_minus1;
            Ok((expected, got, (got - expected).norm()))
        }));
    }
    cases
}
