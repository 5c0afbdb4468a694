use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use special_functions::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Plain partial sum plus the first Euler–Maclaurin corrections.
fn zeta_partial_sum(s: f64, n: usize) -> f64 {
    let nf = n as f64;
    let head: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * nf.powf(-s - 3.0)
}

fn circle_residue(f: impl Fn(Complex64) -> Complex64, at: Complex64, r: f64) -> Complex64 {
    let n = 256;
    let mut acc = c(0.0, 0.0);
    for k in 0..n {
        let e = Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64);
        acc += f(at + e) * e;
    }
    acc / n as f64
}

#[test]
fn zeta_two_against_partial_sums() {
    let oracle = zeta_partial_sum(2.0, 200);
    assert_relative_eq!(oracle, PI * PI / 6.0, epsilon = 1e-13);
    assert_relative_eq!(zeta(c(2.0, 0.0)).unwrap().re, oracle, epsilon = 1e-12);
}

#[test]
fn zeta_against_partial_sums_off_axis() {
    for s in [1.5, 3.0, 4.5] {
        assert_relative_eq!(zeta(c(s, 0.0)).unwrap().re, zeta_partial_sum(s, 400), epsilon = 1e-11);
    }
}

#[test]
fn zeta_at_zero_via_functional_equation() {
    // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s) → −½ as s → 0
    let s = 1e-7;
    let limit = 2f64.powf(s)
        * PI.powf(s - 1.0)
        * (0.5 * PI * s).sin()
        * statrs::function::gamma::gamma(1.0 - s)
        * zeta_partial_sum(1.0 - s, 400);
    assert_relative_eq!(limit, -0.5, epsilon = 1e-6);
    assert_relative_eq!(zeta(c(0.0, 0.0)).unwrap().re, -0.5, epsilon = 1e-14);
}

#[test]
fn zeta_accuracy_high_on_the_line() {
    // Z(t) is real; ζ(½+it) e^{iθ(t)} with θ from log Γ must be real.
    for t in [20.0, 45.0, 59.5] {
        let s = c(0.5, t);
        let theta = (ln_gamma(c(0.25, 0.5 * t))).im - 0.5 * t * PI.ln();
        let z = zeta(s).unwrap() * Complex64::from_polar(1.0, theta);
        assert!(z.im.abs() < 1e-10, "t={t}: {z}");
    }
}

#[test]
fn xi_functional_equation_grid() {
    let mut worst: f64 = 0.0;
    for i in 0..=8 {
        let sigma = 0.1 + 0.1 * i as f64;
        for j in -40..=40 {
            let s = c(sigma, j as f64);
            let d = (xi(s).unwrap() - xi(1.0 - s).unwrap()).norm();
            worst = worst.max(d);
        }
    }
    assert!(worst <= 1e-10, "{worst}");
}

#[test]
fn xi_residues() {
    let r1 = circle_residue(|s| xi(s).unwrap(), c(1.0, 0.0), 1e-2);
    assert!((r1 - 1.0).norm() < 1e-8);
    let r0 = circle_residue(|s| xi(s).unwrap(), c(0.0, 0.0), 1e-2);
    assert!((r0 + 1.0).norm() < 1e-8);
    assert_relative_eq!(xi(c(2.0, 0.0)).unwrap().re, PI / 6.0, epsilon = 1e-13);
}

#[test]
fn scattering_functional_equation() {
    let mut worst: f64 = 0.0;
    for sigma in [0.0, 0.3, -0.3] {
        for j in -60..=60 {
            let s = c(sigma, 0.5 * j as f64 + 0.05);
            let d = (intertwining_c(s).unwrap() * intertwining_c(-s).unwrap() - 1.0).norm();
            worst = worst.max(d);
        }
    }
    assert!(worst <= 1e-9, "{worst}");
}

#[test]
fn scattering_special_values() {
    let c0 = intertwining_c(c(0.0, 0.0)).unwrap();
    assert!((c0 + 1.0).norm() <= 1e-8);
    let r = circle_residue(|s| intertwining_c(s).unwrap(), c(1.0, 0.0), 1e-2);
    assert!((r - 6.0 / PI).norm() <= 1e-6, "{r}");
    assert_relative_eq!(C_RESIDUE_AT_ONE, 1.909_859_317_102_744, epsilon = 1e-12);
    // real symmetry
    let s = c(0.4, 2.2);
    assert!((intertwining_c(s.conj()).unwrap() - intertwining_c(s).unwrap().conj()).norm() < 1e-12);
}

#[test]
fn scattering_log_derivative() {
    // (c′/c)(it) is real
    let d = c_log_derivative(c(0.0, 1.0)).unwrap();
    assert!(d.im.abs() < 1e-8, "{d}");
    let s = c(0.3, 0.7);
    assert!((c_log_derivative(s).unwrap() - c_log_derivative_via_xi(s).unwrap()).norm() < 1e-6);
    // c(s)c(−s) = 1 makes c′/c even
    let s = c(0.0, 0.4);
    let even = (c_log_derivative(s).unwrap() - c_log_derivative(-s).unwrap()).norm();
    assert!(even < 1e-8, "{even}");
}

#[test]
fn harish_chandra_bound_default_grid() {
    let r = hc_bound_check(5.0, &HcGrid::default());
    assert!(r.holds, "{r:?}");
    assert!(r.minimal_t <= 5.0);
    assert!(r.samples > 30_000);
}

/// K₀ from its power series.
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 0.0;
    let mut tail = 0.0;
    for k in 0..40 {
        if k > 0 {
            term *= q / (k as f64 * k as f64);
            harmonic += 1.0 / k as f64;
        }
        i0 += term;
        tail += term * harmonic;
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

#[test]
fn k_bessel_oracles() {
    assert_relative_eq!(k0_series(1.0), 0.421_024_438_240_708_3, epsilon = 1e-14);
    assert_relative_eq!(kbessel_imag_order(0.0, 1.0).value, k0_series(1.0), epsilon = 1e-13);
    let half = kbessel_real_order(0.5, 1.0).value;
    assert_relative_eq!(half, (PI / 2.0).sqrt() * (-1.0f64).exp(), epsilon = 1e-13);
    let fine = bessel::kbessel_with_resolution(c(0.0, 1.0), 0.5, 2.0).value.re;
    assert_relative_eq!(kbessel_imag_order(1.0, 0.5).value, fine, epsilon = 1e-9);
}

#[test]
fn k_bessel_recurrence_in_complex_order() {
    // K_{ν+1}(x) − K_{ν−1}(x) = (2ν/x) K_ν(x)
    let nu = c(0.3, 2.5);
    let x = 3.7;
    let lhs = kbessel(nu + 1.0, x).value - kbessel(nu - 1.0, x).value;
    let rhs = 2.0 * nu / x * kbessel(nu, x).value;
    assert!((lhs - rhs).norm() < 1e-12);
}

proptest! {
    #[test]
    fn gamma_recursion(re in -4.5f64..6.0, im in -20.0f64..20.0) {
        let s = c(re, im);
        prop_assume!((s - s.re.round()).norm() > 1e-3 || s.re > 0.0);
        let lhs = gamma(s + 1.0);
        let rhs = s * gamma(s);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1e-300), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn divisor_sigma_multiplicative(a in 1u64..60, b in 1u64..60, w in -2.0f64..2.0) {
        prop_assume!(gcd(a as i64, b as i64) == 1);
        let w = c(w, 0.5);
        let lhs = divisor_sigma(a * b, w);
        let rhs = divisor_sigma(a, w) * divisor_sigma(b, w);
        prop_assert!((lhs - rhs).norm() < 1e-10 * lhs.norm());
    }

    #[test]
    fn scattering_unitarity(t in -40.0f64..40.0) {
        let v = intertwining_c(c(0.0, t)).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-9);
    }
}
