//! Macdonald function of purely imaginary order.
//!
//! `K_{i tau}(x)` is computed from the positive-kernel integral
//!
//! ```text
//! K_{i tau}(x) = Int_0^inf e^{-x cosh t} cos(tau t) dt
//! ```
//!
//! which is real for real `tau` and stable where the imaginary-order series
//! would cancel catastrophically.  A scaled variant `e^x K_{i tau}(x)` covers
//! large arguments via the standard modified-Bessel expansion.

use std::f64::consts::PI;

use super::bessel::hankel_pq_like;
use crate::quad::{integrate_finite_with_breaks, QuadConfig};
use crate::{Error, Result};

// exp underflows to subnormals near -745; stop the cosh integral there.
const EXP_UNDERFLOW: f64 = 745.0;

/// `K_{i tau}(x)` for `x > 0`, any real `tau`.
pub fn macdonald_k(tau: f64, x: f64, quad: &QuadConfig) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("macdonald_k needs x > 0".into()));
    }
    if x >= EXP_UNDERFLOW {
        return Ok(0.0);
    }
    let t_max = (EXP_UNDERFLOW / x).acosh();
    let f = |t: f64| Ok((-x * t.cosh()).exp() * (tau * t).cos());
    let breaks = cosine_breaks(tau, t_max);
    Ok(integrate_finite_with_breaks(f, 0.0, t_max, &breaks, quad)?.value)
}

/// Exponentially scaled `e^x K_{i tau}(x)`, usable for arbitrarily large `x`.
pub fn macdonald_k_scaled(tau: f64, x: f64, quad: &QuadConfig) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("macdonald_k_scaled needs x > 0".into()));
    }
    if x <= 40.0 {
        let t_max = (1.0 + EXP_UNDERFLOW / x).acosh();
        let f = |t: f64| Ok((x * (1.0 - t.cosh())).exp() * (tau * t).cos());
        let breaks = cosine_breaks(tau, t_max);
        return Ok(integrate_finite_with_breaks(f, 0.0, t_max, &breaks, quad)?.value);
    }
    // e^x K_nu(x) ~ sqrt(pi/(2x)) * sum_m c_m  with mu = 4 nu^2 = -4 tau^2
    let s = hankel_pq_like(-4.0 * tau * tau, x, false);
    Ok((PI / (2.0 * x)).sqrt() * s)
}

fn cosine_breaks(tau: f64, t_max: f64) -> Vec<f64> {
    let mut v = Vec::new();
    if tau.abs() > 0.5 {
        let half = PI / tau.abs();
        let mut t = half;
        while t < t_max && v.len() < 256 {
            v.push(t);
            t += half;
        }
    }
    v
}
