use num_complex::Complex64;
use trace_formula::{gaussian, kernel_constant_terms, kernel_relations_at, polynomial_gaussian, spherical_from_h};

#[test]
fn relations_on_the_unitary_line() {
    for t in [gaussian(0.5).unwrap(), polynomial_gaussian(0.6).unwrap()] {
        for j in 1..=40 {
            let s = Complex64::new(0.0, 0.25 * j as f64);
            let r = kernel_relations_at(&t, s).unwrap();
            assert!(r.diag_to_diag < 1e-10, "{r:?}");
            assert!(r.adiag_to_adiag < 1e-8, "{r:?}");
            assert!(r.diag_to_adiag < 1e-10, "{r:?}");
        }
    }
}

#[test]
fn adiag_relation_at_point_seven_i() {
    let t = gaussian(0.5).unwrap();
    let r = kernel_relations_at(&t, Complex64::new(0.0, 0.7)).unwrap();
    assert!(r.adiag_to_adiag < 1e-8);
}

#[test]
fn adiag_carries_the_pole_of_c_reflected() {
    let t = gaussian(0.5).unwrap();
    let (diag, adiag) = kernel_constant_terms(&t).unwrap();
    assert!(diag.poles.is_empty());
    let pole = adiag.pole_at(Complex64::new(-1.0, 0.0)).expect("pole of c(−s) at −1");
    // c(−s)h(s) ~ −(6/π)h(−1)/(s + 1)
    let expected = -special_functions::C_RESIDUE_AT_ONE * 0.25f64.exp();
    let got = pole.plus.first().copied().unwrap_or_default() + pole.minus.first().copied().unwrap_or_default();
    assert!((got.re - expected).abs() < 1e-8, "{got} vs {expected}");
}

#[test]
fn zero_function_gives_zero_terms() {
    let t = spherical_from_h(|_| Complex64::new(0.0, 0.0)).unwrap();
    let (diag, adiag) = kernel_constant_terms(&t).unwrap();
    for s in [Complex64::new(0.0, 0.7), Complex64::new(0.3, 2.0)] {
        assert_eq!(diag.eval(s), Complex64::new(0.0, 0.0));
        assert_eq!(adiag.eval(s).norm(), 0.0);
    }
}
