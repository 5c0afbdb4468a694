use num_complex::Complex64;

/// σ_w(n) = Σ_{d | n} d^w.
pub fn divisor_sigma(n: u64, w: Complex64) -> Complex64 {
    assert!(n >= 1, "divisor_sigma needs n >= 1");
    let pow = |d: u64| Complex64::new(d as f64, 0.0).powc(w);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += pow(d);
            let e = n / d;
            if e != d {
                acc += pow(e);
            }
        }
        d += 1;
    }
    acc
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
