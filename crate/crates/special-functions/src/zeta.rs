//! Riemann ζ and the completed ξ.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::SpecialError;
use crate::gamma::gamma;

const POLE_RADIUS: f64 = 1e-14;

// B_2, B_4, ..., B_30
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// ζ(s) for s ≠ 1.
///
/// Borwein's accelerated alternating series on Re s > 0, the functional
/// equation on Re s ≤ 0. Near the zeros of 1 − 2^{1−s} the alternating
/// series is replaced by Euler–Maclaurin summation.
pub fn zeta(s: Complex64) -> Result<Complex64, SpecialError> {
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(SpecialError::Pole { at: s });
    }
    if s.re > 0.0 {
        Ok(zeta_right(s))
    } else {
        if s.norm() < 1e-300 {
            return Ok(Complex64::new(-0.5, 0.0));
        }
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let one_minus = 1.0 - s;
        let z = zeta_right(one_minus);
        let two = Complex64::new(2.0, 0.0);
        let pi = Complex64::new(PI, 0.0);
        Ok(two.powc(s) * pi.powc(s - 1.0) * (0.5 * PI * s).sin() * gamma(one_minus) * z)
    }
}

fn zeta_right(s: Complex64) -> Complex64 {
    let two = Complex64::new(2.0, 0.0);
    let denom = 1.0 - two.powc(1.0 - s);
    if denom.norm() < 0.1 || s.re > 40.0 {
        euler_maclaurin(s)
    } else {
        borwein_eta(s) / denom
    }
}

/// Dirichlet η(s) by Borwein's algorithm 2.
fn borwein_eta(s: Complex64) -> Complex64 {
    let n = 25 + s.im.abs().ceil() as usize;
    let nf = n as f64;
    // d_k = Σ_{i≤k} n (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 0.0;
    for i in 0..=n {
        acc += term;
        d.push(acc);
        let fi = i as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kp = Complex64::new((k + 1) as f64, 0.0);
        sum += sign * (dk - dn) / dn * kp.powc(-s);
    }
    -sum
}

/// Euler–Maclaurin summation, valid for Re s > −20 away from s = 1.
fn euler_maclaurin(s: Complex64) -> Complex64 {
    let n = 20 + s.im.abs().ceil() as usize;
    let nf = Complex64::new(n as f64, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += Complex64::new(k as f64, 0.0).powc(-s);
    }
    let n_pow = nf.powc(-s);
    sum += nf * n_pow / (s - 1.0) + 0.5 * n_pow;
    let mut poch = s;
    let mut fact = 2.0;
    let mut n_pow_k = n_pow / nf;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = (k + 1) as f64;
        sum += *b / fact * poch * n_pow_k;
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        n_pow_k /= nf * nf;
    }
    sum
}

/// ξ(s) = π^{−s/2} Γ(s/2) ζ(s), poles at 0 and 1.
pub fn xi(s: Complex64) -> Result<Complex64, SpecialError> {
    if s.norm() < POLE_RADIUS || (s - 1.0).norm() < POLE_RADIUS {
        return Err(SpecialError::Pole { at: s });
    }
    let w = if s.re < 0.5 { 1.0 - s } else { s };
    let pi = Complex64::new(PI, 0.0);
    Ok(pi.powc(-0.5 * w) * gamma(0.5 * w) * zeta(w)?)
}

/// 1/ξ(s), extended by zero at the poles.
pub fn xi_reciprocal(s: Complex64) -> Complex64 {
    match xi(s) {
        Ok(v) => 1.0 / v,
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_values() {
        assert_relative_eq!(zeta(c(2.0, 0.0)).unwrap().re, PI * PI / 6.0, epsilon = 1e-13);
        assert_relative_eq!(zeta(c(0.0, 0.0)).unwrap().re, -0.5, epsilon = 1e-14);
        assert_relative_eq!(zeta(c(-1.0, 0.0)).unwrap().re, -1.0 / 12.0, epsilon = 1e-13);
        assert!(zeta(c(-2.0, 0.0)).unwrap().norm() < 1e-13);
        assert!(matches!(zeta(c(1.0, 0.0)), Err(SpecialError::Pole { .. })));
    }

    #[test]
    fn first_zero() {
        let z = zeta(c(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(z.norm() < 1e-11, "{z}");
    }

    #[test]
    fn both_algorithms_agree() {
        for s in [c(0.7, 3.0), c(1.0, 9.06), c(2.5, -30.0), c(0.2, 55.0)] {
            let a = borwein_eta(s) / (1.0 - c(2.0, 0.0).powc(1.0 - s));
            let b = euler_maclaurin(s);
            if (1.0 - c(2.0, 0.0).powc(1.0 - s)).norm() > 0.1 {
                assert!((a - b).norm() < 1e-11, "{s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn xi_values() {
        assert_relative_eq!(xi(c(2.0, 0.0)).unwrap().re, PI / 6.0, epsilon = 1e-13);
        let a = xi(c(0.3, 2.0)).unwrap();
        let b = xi(c(0.7, -2.0)).unwrap();
        assert!((a - b).norm() < 1e-12);
        assert!(xi(c(0.0, 0.0)).is_err());
        assert_eq!(xi_reciprocal(c(1.0, 0.0)), c(0.0, 0.0));
    }
}
