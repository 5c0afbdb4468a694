use num_complex::Complex64;
use trace_formula::{
    gaussian, polynomial_gaussian, tf_minus1_spectral, two_term_laurent_kernel, two_term_laurent_model, FitConfig,
    TraceError,
};

fn indicator(x: f64) -> Complex64 {
    Complex64::new(if x >= 1.0 { 1.0 } else { 0.0 }, 0.0)
}

/// E₁(1) = ∫₁^∞ e^{−x} dx/x by composite Simpson on a log scale.
fn e1_at_one() -> f64 {
    let (n, hi) = (20_000, 5.0f64.ln() + 2.0);
    let h = hi / n as f64;
    let f = |u: f64| (-u.exp()).exp();
    let mut acc = f(0.0) + f(hi);
    for j in 1..n {
        acc += if j % 2 == 1 { 4.0 } else { 2.0 } * f(j as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn indicator_square_grows_like_t() {
    let fit = two_term_laurent_model(indicator, indicator, &FitConfig::default()).unwrap();
    assert!((fit.laurent.a_minus1 + 1.0).norm() < 1e-12);
    assert!(fit.laurent.a0.norm() < 1e-12);
    // regularized ∫₁^∞ x^s d×x = −1/s
    assert!(fit.asymptote_defect < 1e-12);
    for (t, v) in fit.t_grid.iter().zip(&fit.values) {
        assert!((v[0] - t).abs() < 1e-12);
    }
}

#[test]
fn exponential_correction_enters_a0() {
    let phi = |x: f64| indicator(x) * (1.0 + (-x).exp());
    let fit = two_term_laurent_model(indicator, phi, &FitConfig::default()).unwrap();
    assert!((fit.laurent.a_minus1 + 1.0).norm() < 1e-9);
    assert!((fit.laurent.a0.re - e1_at_one()).abs() < 1e-9);
    assert!((fit.laurent.a0.re - 0.2194).abs() < 1e-4);
    assert!(fit.residuals[0] > fit.residuals[2]);
}

#[test]
fn oscillating_remainder_is_a_fit_error() {
    let phi = |x: f64| indicator(x) * (1.0 + 0.5 * x.ln().sin());
    let err = two_term_laurent_model(indicator, phi, &FitConfig::default()).unwrap_err();
    assert!(matches!(err, TraceError::Fit { .. }));
}

#[test]
fn kernel_fit_matches_spectral_minus_one() {
    let corpus = [
        (gaussian(0.5).unwrap(), gaussian(0.5).unwrap()),
        (gaussian(0.5).unwrap(), gaussian(0.4).unwrap()),
        (gaussian(0.7).unwrap(), polynomial_gaussian(0.5).unwrap()),
    ];
    for (t1, t2) in &corpus {
        let fit = two_term_laurent_kernel(t1, t2, &FitConfig::default()).unwrap();
        let spectral = tf_minus1_spectral(t1, t2).unwrap();
        assert!((fit.laurent.a_minus1 - spectral).norm() < 1e-4, "{} vs {spectral}", fit.laurent.a_minus1);
        assert!(fit.asymptote_defect < 1e-8);
        assert!(fit.residuals.iter().all(|r| *r < 1e-8));
    }
}

#[test]
fn fit_config_is_validated() {
    let bad = FitConfig { t_grid: vec![2.0, 3.0], fit_points: 4 };
    assert!(matches!(two_term_laurent_model(indicator, indicator, &bad), Err(TraceError::Domain(_))));
}
