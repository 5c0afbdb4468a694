//! The level-1 scattering scalar c(s) = ξ(s)/ξ(s+1).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::SpecialError;
use crate::zeta::xi;

const REMOVABLE_RADIUS: f64 = 0.05;
const REMOVABLE_NODES: usize = 64;
const POLE_RADIUS: f64 = 1e-12;

/// Residue of c at its pole s = 1, namely 1/ξ(2) = 6/π.
pub const C_RESIDUE_AT_ONE: f64 = 6.0 / PI;

#[cfg(feature = "fault-injection")]
pub mod fault {
    //! Test-only switch that flips the sign of c(s).
    use std::sync::atomic::{AtomicBool, Ordering};

    static FLIP: AtomicBool = AtomicBool::new(false);

    pub fn set_c_sign_fault(on: bool) {
        FLIP.store(on, Ordering::SeqCst);
    }

    pub(crate) fn active() -> bool {
        FLIP.load(Ordering::SeqCst)
    }
}

fn fault_sign() -> f64 {
    #[cfg(feature = "fault-injection")]
    {
        if fault::active() {
            return -1.0;
        }
    }
    1.0
}

fn ratio(s: Complex64) -> Result<Complex64, SpecialError> {
    Ok(xi(s)? / xi(s + 1.0)?)
}

/// c(s). The removable point s = 0 is evaluated as a Cauchy mean,
/// and c(−1) = 0.
pub fn intertwining_c(s: Complex64) -> Result<Complex64, SpecialError> {
    if (s - 1.0).norm() < POLE_RADIUS {
        return Err(SpecialError::Pole { at: s });
    }
    if (s + 1.0).norm() < POLE_RADIUS {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let value = if s.norm() < 1e-3 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..REMOVABLE_NODES {
            let theta = 2.0 * PI * (k as f64 + 0.5) / REMOVABLE_NODES as f64;
            acc += ratio(s + Complex64::from_polar(REMOVABLE_RADIUS, theta))?;
        }
        acc / REMOVABLE_NODES as f64
    } else {
        ratio(s)?
    };
    Ok(value * fault_sign())
}

fn richardson(f: impl Fn(f64) -> Result<Complex64, SpecialError>, h: f64) -> Result<Complex64, SpecialError> {
    let d = |h: f64| -> Result<Complex64, SpecialError> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// (c′/c)(s) by central differences of c with one Richardson step.
pub fn c_log_derivative(s: Complex64) -> Result<Complex64, SpecialError> {
    let h = 1e-4;
    let proximity = SpecialError::PoleProximity { at: s, radius: 4.0 * h };
    if (s - 1.0).norm() < 4.0 * h || (s + 1.0).norm() < 4.0 * h {
        return Err(proximity);
    }
    let c0 = intertwining_c(s)?;
    if c0.norm() < 1e-12 {
        return Err(proximity);
    }
    let dc = richardson(|e| intertwining_c(s + e), h)?;
    Ok(dc / c0)
}

/// (c′/c)(s) as (ξ′/ξ)(s) − (ξ′/ξ)(s+1); independent cross-check path.
pub fn c_log_derivative_via_xi(s: Complex64) -> Result<Complex64, SpecialError> {
    let h = 1e-4;
    let log_der = |w: Complex64| -> Result<Complex64, SpecialError> {
        Ok(richardson(|e| xi(w + e), h)? / xi(w)?)
    };
    Ok(log_der(s)? - log_der(s + 1.0)?)
}
