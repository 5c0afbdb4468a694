use std::f64::consts::PI;

use automorphic_halfplane::*;
use num_complex::Complex64;
use special_functions::intertwining_c;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn fourier_matches_lattice_sum_at_three() {
    let z = HalfPlanePoint::new(0.2, 1.3);
    let s = c64(3.0, 0.0);
    let f = eisenstein(s, z).unwrap();
    let l = eisenstein_lattice(s, z, 40, 4000).unwrap();
    assert!((f - l).norm() < 1e-6, "fourier {f} lattice {l}");
}

#[test]
fn fourier_matches_lattice_sum_on_grid() {
    let z = HalfPlanePoint::new(0.2, 1.3);
    for re in [2.0, 2.5, 3.0, 3.5, 4.0] {
        for im in [0.0, 1.5, -3.0] {
            let s = c64(re, im);
            let f = eisenstein(s, z).unwrap();
            let l = eisenstein_lattice(s, z, 40, 4000).unwrap();
            assert!((f - l).norm() < 1e-6 * f.norm().max(1.0), "s = {s}: fourier {f} lattice {l}");
        }
    }
}

#[test]
fn constant_term_of_eisenstein() {
    let s = c64(0.4, 2.0);
    let e = EisensteinSeries::new(s).unwrap();
    let phi = e.automorphic();
    for y in [0.9, 1.3, 2.5] {
        let ct = constant_term(&phi, y);
        assert!((ct - e.constant_term(y)).norm() < 1e-6, "y = {y}: {ct} vs {}", e.constant_term(y));
    }
}

#[test]
fn functional_equation() {
    let s = c64(0.0, 0.3);
    let c = intertwining_c(s).unwrap();
    for (x, y) in [(0.1, 1.2), (-0.4, 0.95), (0.3, 2.7)] {
        let z = HalfPlanePoint::new(x, y);
        let a = eisenstein(s, z).unwrap();
        let b = c * eisenstein(-s, z).unwrap();
        assert!((a - b).norm() < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn pole_and_zero_structure() {
    let z = HalfPlanePoint::new(0.1, 1.2);
    assert!(matches!(eisenstein(c64(1.0, 0.0), z), Err(AutomorphicError::Special(_))));
    assert!(eisenstein(c64(0.0, 0.0), z).unwrap().norm() < 1e-12);
    // residue in s at s = 1 is constant in z
    let n = 64;
    let r = 0.05;
    for z in [z, HalfPlanePoint::new(-0.3, 2.0)] {
        let mut acc = c64(0.0, 0.0);
        for k in 0..n {
            let e = Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / n as f64);
            acc += eisenstein(1.0 + e, z).unwrap() * e;
        }
        let res = acc / n as f64;
        assert!((res - 6.0 / PI).norm() < 1e-8, "{res}");
    }
}

#[test]
fn eisenstein_is_invariant() {
    let e = EisensteinSeries::new(c64(0.3, 4.0)).unwrap();
    let z = HalfPlanePoint::new(0.17, 1.1);
    let v = e.eval_unreduced(z);
    // values off F through the unreduced Fourier series
    for g in [[1, 1, 0, 1], [0, -1, 1, 0], [2, 1, 1, 1]] {
        let w = e.eval_unreduced(z.act(g));
        assert!((w - v).norm() < 1e-8, "{g:?}: {w} vs {v}");
    }
}
