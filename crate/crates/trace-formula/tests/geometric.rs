use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use special_functions::{xi, EULER_GAMMA};
use trace_formula::{
    gaussian, geometric_side_of, hyperbolic_ratio, orbital_integral, polynomial_gaussian, spherical_from_h, tate_zeta,
    tate_zeta_term, tf_minus1_geometric, tf_minus1_spectral, two_term_laurent_kernel, unipotent_profile, weight_v,
    weighted_orbital_integral, FitConfig, GeometricTermConfig, SphericalTestFunction, TraceError, N_MEASURE,
};

fn gaussian_profile(x: f64) -> Complex64 {
    Complex64::new((-PI * x * x).exp(), 0.0)
}

/// Δ(g) = (Im g·i)^{1/2}; w ranges over {1, w₀}. Returns the measure of the
/// set of u with Δ(w⁻¹ a_u n_t) < 1 for both w, a_u·i = e^{2u}i.
fn volume_by_quadrature(t: f64) -> f64 {
    let delta = |z: Complex64| z.im.sqrt();
    let (n, lo, hi) = (2_000_000, -5.0, 5.0);
    let du = (hi - lo) / n as f64;
    let mut count = 0usize;
    for j in 0..n {
        let u = lo + (j as f64 + 0.5) * du;
        let z = Complex64::new(t, 1.0) * (2.0 * u).exp();
        let w0z = -1.0 / z;
        if delta(z) < 1.0 && delta(w0z) < 1.0 {
            count += 1;
        }
    }
    count as f64 * du
}

/// Plain orbital integral in geodesic-polar coordinates around iℝ₊:
/// z = re^{iθ}, M\H ≅ θ ∈ (0, π) with measure 2 dθ/sin²θ.
fn orbital_polar(t: &SphericalTestFunction, a: f64) -> f64 {
    let n = 200_000;
    let dth = PI / n as f64;
    let c = (a - 1.0).powi(2) / (4.0 * a);
    let mut acc = 0.0;
    for j in 0..n {
        let th = (j as f64 + 0.5) * dth;
        let s2 = th.sin().powi(2);
        acc += t.k_point_pair(c / s2).re / s2 * dth;
    }
    2.0 * acc
}

#[test]
fn weight_values() {
    assert_eq!(weight_v(0.0), 0.0);
    assert!((weight_v(1.0) - 0.5 * 2f64.ln()).abs() < 1e-15);
    assert!((weight_v(1.0) - 0.3466).abs() < 1e-4);
    assert!((weight_v(-3.0) - weight_v(3.0)).abs() < 1e-15);
}

#[test]
fn weight_is_a_volume() {
    for t in [2.0, 0.5] {
        assert!((volume_by_quadrature(t) - weight_v(t)).abs() < 1e-5);
    }
    assert!((volume_by_quadrature(2.0) - 0.5 * 5f64.ln()).abs() < 1e-5);
}

#[test]
fn orbital_integral_in_polar_coordinates() {
    let t = gaussian(0.5).unwrap();
    for a in [3.0, 1.5, 10.0, 0.25] {
        let got = orbital_integral(&t, a).unwrap().re;
        let oracle = orbital_polar(&t, a);
        assert!((got - oracle).abs() < 1e-4, "a = {a}: {got} vs {oracle}");
    }
}

#[test]
fn orbital_integral_closed_form() {
    // ∫_N Φ(n⁻¹αn) dn = g(½ log a)/(2 sinh(½ log a))
    let t = polynomial_gaussian(0.5).unwrap();
    for a in [2.0, 5.0, 40.0] {
        let r = 0.5 * f64::ln(a);
        let expected = t.g(r) / (2.0 * r.sinh());
        assert!((orbital_integral(&t, a).unwrap() - expected).norm() < 1e-9);
    }
}

#[test]
fn weighted_orbital_integral_by_direct_quadrature() {
    let t = gaussian(0.5).unwrap();
    let a: f64 = 4.0;
    let c = (a - 1.0).powi(2) / (4.0 * a);
    let (n, l) = (400_000, 200.0);
    let dx = 2.0 * l / n as f64;
    let mut acc = 0.0;
    for j in 0..n {
        let x = -l + (j as f64 + 0.5) * dx;
        acc += t.k_point_pair(c * (1.0 + x * x)).re * weight_v(x) * dx;
    }
    let got = weighted_orbital_integral(&t, a).unwrap().re;
    assert!((got - N_MEASURE * acc).abs() < 1e-6, "{got} vs {}", N_MEASURE * acc);
    assert!(got > 0.0 && got < orbital_integral(&t, a).unwrap().re * 10.0);
}

#[test]
fn non_strongly_regular_class_has_half_weight() {
    let t = gaussian(0.5).unwrap();
    // α = −1 acts by z ↦ −z̄; the conjugated point-pair invariant is t².
    let (n, l) = (400_000, 200.0);
    let dx = 2.0 * l / n as f64;
    let mut acc = 0.0;
    for j in 0..n {
        let x = -l + (j as f64 + 0.5) * dx;
        acc += t.k_point_pair(x * x).re * weight_v(x) * dx;
    }
    let got = weighted_orbital_integral(&t, -1.0).unwrap().re;
    assert!((got - 0.5 * N_MEASURE * acc).abs() < 1e-6);
}

#[test]
fn elliptic_and_central_data_are_rejected() {
    assert!(matches!(hyperbolic_ratio([0.0, -1.0, 1.0, 0.0]), Err(TraceError::EllipticInput { .. })));
    assert!(matches!(hyperbolic_ratio([1.0, 1.0, 0.0, 1.0]), Err(TraceError::EllipticInput { .. })));
    let t = gaussian(0.5).unwrap();
    assert!(matches!(weighted_orbital_integral(&t, 1.0), Err(TraceError::EllipticInput { .. })));
    let ratio = hyperbolic_ratio([2.0, 1.0, 1.0, 1.0]).unwrap();
    assert!((ratio - (3.0 + 5f64.sqrt()) / (3.0 - 5f64.sqrt())).abs() < 1e-12);
    assert!(weighted_orbital_integral(&t, ratio).is_ok());
}

#[test]
fn zero_kernel_gives_zero_orbital_integral() {
    let z = spherical_from_h(|_| Complex64::new(0.0, 0.0)).unwrap();
    assert_eq!(weighted_orbital_integral(&z, 3.0).unwrap(), Complex64::new(0.0, 0.0));
}

#[test]
fn tate_integral_of_the_gaussian_is_xi() {
    for w in [1.5, 2.0, 3.0] {
        let w = Complex64::new(w, 0.0);
        let z = tate_zeta(&gaussian_profile, w).unwrap();
        assert!((z - xi(w).unwrap()).norm() < 1e-8, "w = {w}");
    }
}

#[test]
fn tate_laurent_of_the_gaussian() {
    let term = tate_zeta_term(&gaussian_profile, 1.0).unwrap();
    assert!((term.laurent.a_minus1.re + 2.0).abs() < 1e-10);
    assert!((term.fourier_at_zero.re - 1.0).abs() < 1e-10);
    assert!(term.residue_defect < 1e-10);
    // finite part of ξ(1 − s/2) at s = 0: mean over a circle
    let m = 128;
    let mean: Complex64 = (0..m)
        .map(|j| {
            let s = Complex64::from_polar(0.5, 2.0 * PI * j as f64 / m as f64);
            xi(1.0 - s / 2.0).unwrap()
        })
        .sum::<Complex64>()
        / m as f64;
    assert!((term.laurent.a0 - mean).norm() < 1e-8, "{} vs {mean}", term.laurent.a0);
    assert!((term.laurent.a0.re - (0.5 * EULER_GAMMA - 0.5 * (4.0 * PI).ln())).abs() < 1e-10);
}

#[test]
fn tate_of_zero_profile() {
    let term = tate_zeta_term(&|_| Complex64::new(0.0, 0.0), 1.0).unwrap();
    assert_eq!(term.laurent.a_minus1, Complex64::new(0.0, 0.0));
    assert_eq!(term.laurent.a0, Complex64::new(0.0, 0.0));
}

#[test]
fn tate_residue_scales_with_volume() {
    let term = tate_zeta_term(&gaussian_profile, 0.5).unwrap();
    assert!((term.laurent.a_minus1.re + 1.0).abs() < 1e-10);
    assert!(term.residue_defect < 1e-10);
}

#[test]
fn minus_one_triangle_on_gaussian_corpus() {
    let config = GeometricTermConfig::default();
    let corpus = [
        (gaussian(0.5).unwrap(), gaussian(0.5).unwrap()),
        (gaussian(0.4).unwrap(), gaussian(0.6).unwrap()),
        (gaussian(0.8).unwrap(), polynomial_gaussian(0.5).unwrap()),
    ];
    for (t1, t2) in &corpus {
        let spectral = tf_minus1_spectral(t1, t2).unwrap();
        let geometric = tf_minus1_geometric(t1, t2, &config).unwrap();
        let fit = two_term_laurent_kernel(t1, t2, &FitConfig::default()).unwrap().laurent.a_minus1;
        assert!(geometric.alpha_inserted);
        assert!((geometric.value - spectral).norm() < 1e-3);
        assert!((fit - spectral).norm() < 1e-3);
        assert!((fit - geometric.value).norm() < 1e-3);
    }
}

#[test]
fn unipotent_slice_equals_tate_residue() {
    let (t1, t2) = (gaussian(0.5).unwrap(), gaussian(0.6).unwrap());
    let phi = t1.convolution(&t2).unwrap();
    let config = GeometricTermConfig::default();
    let geometric = tf_minus1_geometric(&t1, &t2, &config).unwrap();
    let slice = geometric.classes.iter().find(|c| c.alpha == 1.0).unwrap().value;
    let profile = unipotent_profile(&phi);
    let tate = tate_zeta_term(&profile, config.vol_gm1).unwrap();
    assert!((slice - tate.laurent.a_minus1).norm() < 1e-4);
}

#[test]
fn zero_test_function_has_zero_geometric_terms() {
    let z = spherical_from_h(|_| Complex64::new(0.0, 0.0)).unwrap();
    let t = gaussian(0.5).unwrap();
    let config = GeometricTermConfig::default();
    assert_eq!(tf_minus1_geometric(&z, &t, &config).unwrap().value.norm(), 0.0);
    let side = geometric_side_of(&z, &config).unwrap();
    assert_eq!(side.total.norm(), 0.0);
}

#[test]
fn extra_classes_are_summed_and_bounded() {
    let t = gaussian(0.5).unwrap();
    let phi = t.convolution(&t).unwrap();
    let config = GeometricTermConfig { unipotent_classes: vec![1.0, 2.0, 1e9], ..Default::default() };
    let g = tf_minus1_geometric(&t, &t, &config).unwrap();
    assert_eq!(g.classes.len(), 2);
    // n(x)α·i = x + 2i, so the class 2 integrand is k((x² + 1)/8)
    let (n, l) = (400_000, 400.0);
    let dx = 2.0 * l / n as f64;
    let mut acc = 0.0;
    for j in 0..n {
        let x = -l + (j as f64 + 0.5) * dx;
        acc += phi.k_point_pair((x * x + 1.0) / 8.0).re * dx;
    }
    assert!((g.classes[1].value.re + N_MEASURE * acc).abs() < 1e-7, "{} vs {}", g.classes[1].value, -N_MEASURE * acc);
    assert!((g.value - (g.classes[0].value + g.classes[1].value)).norm() < 1e-15);
}

#[test]
fn invalid_volumes_are_rejected() {
    let t = gaussian(0.5).unwrap();
    let config = GeometricTermConfig { vol_a1: 0.0, ..Default::default() };
    assert!(matches!(tf_minus1_geometric(&t, &t, &config), Err(TraceError::Domain(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn orbital_integral_is_linear(scale in -4.0f64..4.0, a in 1.5f64..20.0) {
        let t = gaussian(0.5).unwrap();
        let s = t.scaled(Complex64::new(scale, 0.0)).unwrap();
        let base = weighted_orbital_integral(&t, a).unwrap();
        let scaled = weighted_orbital_integral(&s, a).unwrap();
        prop_assert!((scaled - base * scale).norm() < 1e-12 * (1.0 + scale.abs()));
    }
}
