use std::f64::consts::PI;

use automorphic_halfplane::*;
use num_complex::Complex64;
use special_functions::{c_log_derivative, intertwining_c, kbessel};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn psi(f: &BoundaryFunction) -> PseudoEisenstein {
    PseudoEisenstein::new(f.clone()).unwrap()
}

/// ½∫_F Ψf₁·Ψf₂ dμ by direct quadrature.
fn half_fd_pairing(f1: &BoundaryFunction, f2: &BoundaryFunction, y_max: f64) -> Complex64 {
    let (p1, p2) = (psi(f1), psi(f2));
    let cfg = FdConfig::default().with_y_max(y_max);
    0.5 * fd_integrate(|z| p1.eval(z) * p2.eval(z), &cfg, None).unwrap()
}

fn schwartz_pairs() -> Vec<(BoundaryFunction, BoundaryFunction)> {
    let a = BoundaryFunction::bessel(1.0, 1.0);
    let b = BoundaryFunction::bessel(2.0, 0.7);
    let c = BoundaryFunction::bessel(0.5, 1.5);
    vec![(a.clone(), b.clone()), (a, c.clone()), (b.clone(), b), (c.clone(), c)]
}

#[test]
fn truncation_above_height_removes_constant_term() {
    let s = c64(0.3, 1.2);
    let e = EisensteinSeries::new(s).unwrap();
    let phi = e.automorphic();
    let t = 0.5;
    for z in [HalfPlanePoint::new(0.2, 4.0), HalfPlanePoint::new(-0.45, 3.1)] {
        let expect = e.eval(z) - Complex64::new(z.y, 0.0).powc((1.0 + s) * 0.5)
            - e.scattering() * Complex64::new(z.y, 0.0).powc((1.0 - s) * 0.5);
        let got = truncate(&phi, t, z);
        assert!((got - expect).norm() < 1e-6, "z = {z:?}: {got} vs {expect}");
        assert!((e.truncated(t, z) - expect).norm() < 1e-6);
    }
    // a point equivalent to one above the truncation height
    let w = HalfPlanePoint::new(0.2, 4.0).invert();
    assert!((truncate(&phi, t, w) - truncate(&phi, t, HalfPlanePoint::new(0.2, 4.0))).norm() < 1e-6);
}

#[test]
fn truncation_below_height_is_identity() {
    let phi = EisensteinSeries::new(c64(0.3, 1.2)).unwrap().automorphic();
    for z in [HalfPlanePoint::new(0.1, 1.5), HalfPlanePoint::new(0.4, 0.95)] {
        assert_eq!(truncate(&phi, 0.5, z), phi.eval(z));
    }
}

#[test]
fn truncated_norm_grows_linearly() {
    // ½∫|∧ᵀE(it)|² = 2T − (c′/c)(−it) + (c(−it)e^{2iTt} − c(it)e^{−2iTt})/(2it)
    let t0 = 1.5;
    let s = c64(0.0, t0);
    let closed = |tt: f64| {
        let osc = (intertwining_c(-s).unwrap() * (2.0 * s * tt).exp() - intertwining_c(s).unwrap() * (-2.0 * s * tt).exp())
            / (2.0 * s);
        2.0 * tt - c_log_derivative(-s).unwrap() + osc
    };
    let norm = |tt: f64| {
        0.5 * truncated_product_integral(s, -s, tt, &truncation_grid(tt, &FdConfig::default())).unwrap()
    };
    let (n1, n2) = (norm(1.0), norm(2.0));
    assert!(n1.im.abs() < 1e-8 && n2.im.abs() < 1e-8);
    assert!((n1 - closed(1.0)).norm() < 1e-4, "{n1} vs {}", closed(1.0));
    assert!((n2 - closed(2.0)).norm() < 1e-4, "{n2} vs {}", closed(2.0));
    assert!(n2.re > n1.re);
}

#[test]
fn fundamental_domain_volume() {
    let cfg = FdConfig::default();
    let v = fd_integrate(|_| c64(1.0, 0.0), &cfg, Some(constant_tail(cfg.y_max))).unwrap();
    assert!((v - PI / 3.0).norm() < 1e-8, "{v}");
}

#[test]
fn missing_tail_is_reported() {
    let cfg = FdConfig::default();
    assert!(matches!(fd_integrate(|_| c64(1.0, 0.0), &cfg, None), Err(AutomorphicError::TailMissing { .. })));
}

#[test]
fn zero_integrand() {
    assert_eq!(fd_integrate(|_| c64(0.0, 0.0), &FdConfig::default(), None).unwrap(), c64(0.0, 0.0));
}

#[test]
fn maass_selberg_conjugate_pair_is_positive() {
    let s1 = c64(0.5, 2.0);
    let (lhs, rhs, dev) = maass_selberg(s1, s1.conj(), 1.0).unwrap();
    assert!(lhs.re >= 0.0 && lhs.im.abs() < 1e-8, "{lhs}");
    assert!(dev < 1e-4, "{lhs} vs {rhs}");
}

#[test]
fn maass_selberg_on_the_unitary_line() {
    for t in [1.0, 1.5, 2.0] {
        let (lhs, rhs, dev) = maass_selberg(c64(0.0, 2.0), c64(0.0, 3.0), t).unwrap();
        assert!(dev < 1e-4, "T = {t}: {lhs} vs {rhs}");
    }
}

#[test]
fn maass_selberg_generic_pairs() {
    for (s1, s2, t) in [(c64(0.3, 1.0), c64(0.0, 5.0), 1.0), (c64(1.5, 0.0), c64(0.0, 0.7), 2.0), (c64(0.2, -1.0), c64(0.6, 2.5), 1.0)] {
        let r = maass_selberg_with(s1, s2, t, &FdConfig::default()).unwrap();
        assert!(r.deviation < 1e-4, "{s1}, {s2}, T = {t}: {r:?}");
        let full = c64(r.lhs_full_measure[0], r.lhs_full_measure[1]);
        let rhs = c64(r.rhs[0], r.rhs[1]);
        assert!((full - 2.0 * rhs).norm() < 2e-4);
    }
}

#[test]
fn maass_selberg_degenerate_parameters() {
    let s = c64(0.0, 2.0);
    assert!(matches!(maass_selberg(s, -s, 1.0), Err(AutomorphicError::DegenerateParameter { .. })));
    assert!(matches!(maass_selberg(s, s, 1.0), Err(AutomorphicError::DegenerateParameter { .. })));
}

#[test]
fn rank_one_matches_direct_quadrature() {
    for (f1, f2) in schwartz_pairs() {
        let phi1 = psi(&f1).automorphic();
        let phi2 = psi(&f2).automorphic();
        let spectral = rank_one_plancherel(&phi1, &phi2).unwrap();
        let direct = half_fd_pairing(&f1, &f2, f1.cusp_height(1e-16).max(f2.cusp_height(1e-16)));
        assert!((spectral.value() - direct).norm() < 1e-4, "{} vs {direct}", spectral.value());
        let parts = spectral.term("continuous") + spectral.term("residual");
        assert!((parts - spectral.value()).norm() < 1e-12);
    }
}

#[test]
fn residual_term_is_product_of_projections() {
    let (f1, f2) = schwartz_pairs().remove(0);
    let spectral = rank_one_plancherel(&psi(&f1).automorphic(), &psi(&f2).automorphic()).unwrap();
    let residual = spectral.term("residual");
    // f̌(1) = K_{α−1}(2β)
    let closed = 6.0 / PI * kbessel(c64(0.0, 0.0), 2.0).value * kbessel(c64(1.0, 0.0), 1.4).value;
    assert!((residual - closed).norm() < 1e-8, "{residual} vs {closed}");
    let projection = |f: &BoundaryFunction| {
        let p = psi(f);
        let cfg = FdConfig::default().with_y_max(f.cusp_height(1e-16));
        0.5 * fd_integrate(|z| p.eval(z), &cfg, None).unwrap()
    };
    let oracle = projection(&f1) * projection(&f2) / (PI / 6.0);
    assert!((residual - oracle).norm() < 1e-4, "{residual} vs {oracle}");
}

#[test]
fn rank_one_continuous_part_matches_half_line() {
    let (f1, f2) = schwartz_pairs().remove(0);
    let spectral = rank_one_plancherel(&psi(&f1).automorphic(), &psi(&f2).automorphic()).unwrap();
    let half = continuous_half_line(&f1, &f2, 40.0).unwrap();
    assert!((spectral.term("continuous") - half).norm() < 1e-8, "{} vs {half}", spectral.term("continuous"));
}

#[test]
fn rank_one_with_cusp_exponent() {
    let f1 = BoundaryFunction::bessel(1.0, 1.0);
    let f2 = BoundaryFunction::new(
        |y| Complex64::new(y * y * (-0.7 * (y + 1.0 / y)).exp(), 0.0),
        &[CuspTerm { exponent: c64(0.5, 0.0), coefficient: c64(1.0, 0.0) }],
    );
    let spectral = rank_one_plancherel(&psi(&f1).automorphic(), &psi(&f2).automorphic()).unwrap();
    let exponent = spectral.breakdown.iter().find(|t| t.name == "exponent").expect("exponent term");
    assert_eq!(exponent.location, Some([0.5, 0.0]));
    assert!(c64(exponent.value[0], exponent.value[1]).norm() > 1e-6);
    // Ψf₁ decays at the cusp, so the truncated integrals converge and their
    // limit is the regularized value
    let direct = half_fd_pairing(&f1, &f2, f1.cusp_height(1e-18));
    assert!((spectral.value() - direct).norm() < 1e-4, "{} vs {direct}", spectral.value());
}

#[test]
fn rank_one_critical_exponent() {
    let core = |y: f64| Complex64::new(y * (-y - 1.0 / y).exp(), 0.0);
    let f1 = BoundaryFunction::new(core, &[CuspTerm { exponent: c64(0.0, 0.5), coefficient: c64(1.0, 0.0) }]);
    let f2 = BoundaryFunction::new(core, &[CuspTerm { exponent: c64(0.0, -0.5), coefficient: c64(1.0, 0.0) }]);
    let r = rank_one_plancherel(&psi(&f1).automorphic(), &psi(&f2).automorphic());
    assert!(matches!(r, Err(AutomorphicError::CriticalExponent { .. })), "{r:?}");
}

#[test]
fn rank_one_rejects_other_sources() {
    let e = EisensteinSeries::new(c64(0.0, 1.0)).unwrap().automorphic();
    let p = psi(&BoundaryFunction::bessel(1.0, 1.0)).automorphic();
    assert!(matches!(rank_one_plancherel(&e, &p), Err(AutomorphicError::NotPseudoEisenstein)));
}

#[test]
fn rank_one_zero_input() {
    let p = psi(&BoundaryFunction::bessel(1.0, 1.0)).automorphic();
    let r = rank_one_plancherel(&p, &AutomorphicFunction::zero()).unwrap();
    assert_eq!(r.value(), c64(0.0, 0.0));
    assert!(r.breakdown.is_empty());
}

#[test]
fn symmetry_on_pseudo_eisenstein_corpus() {
    let ts: Vec<f64> = (0..=20).map(|k| 0.5 * k as f64).collect();
    for f in [BoundaryFunction::bessel(1.0, 1.0), BoundaryFunction::bessel(2.0, 0.7), BoundaryFunction::bessel(0.5, 1.5)] {
        let report = constant_term_symmetry_check(&psi(&f).automorphic(), &ts, &FdConfig::default()).unwrap();
        assert_eq!(report.method, "eisenstein-adjoint");
        assert!(report.deviation < 1e-4, "{report:?}");
    }
}

#[test]
fn adjoint_matches_closed_form_transform() {
    let f = BoundaryFunction::bessel(1.0, 1.0);
    let cfg = FdConfig::default().with_y_max(f.cusp_height(1e-16));
    let h = constant_term_transform(&f).unwrap();
    for (t, (p, m)) in [1.0, 4.0].into_iter().zip(adjoint_transform(&psi(&f), &[1.0, 4.0], &cfg).unwrap()) {
        assert!((p - h.eval(c64(0.0, t))).norm() < 1e-6);
        assert!((m - h.eval(c64(0.0, -t))).norm() < 1e-6);
    }
}

#[test]
fn symmetry_with_cusp_terms() {
    let f = BoundaryFunction::new(
        |y| Complex64::new(y * (-y - 1.0 / y).exp(), 0.0),
        &[CuspTerm { exponent: c64(-0.5, 0.0), coefficient: c64(1.0, 0.0) }],
    );
    let ts: Vec<f64> = (0..=20).map(|k| 0.5 * k as f64).collect();
    let report = constant_term_symmetry_check(&psi(&f).automorphic(), &ts, &FdConfig::default()).unwrap();
    assert_eq!(report.method, "transform");
    assert!(report.deviation < 1e-4, "{report:?}");
}

#[test]
fn symmetry_for_eisenstein_series() {
    let phi = EisensteinSeries::new(c64(0.0, 2.5)).unwrap().automorphic();
    let report = constant_term_symmetry_check(&phi, &[], &FdConfig::default()).unwrap();
    assert!(report.deviation < 1e-6, "{report:?}");
}

#[test]
fn symmetry_for_vanishing_constant_term() {
    let phi = sine_poincare(&BoundaryFunction::bessel(1.0, 1.0), 1).unwrap();
    for y in [0.9, 1.7, 3.0] {
        assert!(constant_term(&phi, y).norm() < 1e-12);
    }
    let report = constant_term_symmetry_check(&phi, &[0.0, 2.0, 5.0], &FdConfig::default().with_y_max(10.0)).unwrap();
    assert_eq!(report.method, "sampled");
    assert!(report.deviation < 1e-10, "{report:?}");
}

#[test]
fn sine_poincare_is_invariant_and_odd() {
    let phi = sine_poincare(&BoundaryFunction::bessel(2.0, 1.0), 2).unwrap();
    let points = [HalfPlanePoint::new(0.13, 0.4), HalfPlanePoint::new(0.3, 1.2)];
    assert!(phi.invariance_defect(&points) < 1e-8);
    for z in points {
        let mirror = HalfPlanePoint::new(-z.x, z.y);
        assert!((phi.eval(z) + phi.eval(mirror)).norm() < 1e-12);
    }
}
