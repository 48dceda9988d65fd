//! Built-in test functions used across the verification suites, each
//! documented with the hypotheses it satisfies numerically.
//!
//! | name       | definition            | side      | tail                      |
//! |------------|-----------------------|-----------|---------------------------|
//! | `exp3sqrt` | `e^{-3 sqrt x}`       | half-line | `exp_sqrt(3)`             |
//! | `k0sqrt`   | `2 K_0(2 sqrt x)`     | half-line | `exp_sqrt(2)` (marginal)  |
//! | `gauss`    | `e^{-tau^2}`          | real line | faster than `exp(2)`      |
//! | `t2gauss`  | `tau^2 e^{-tau^2}`    | real line | faster than `exp(2)`      |
//!
//! `exp3sqrt` has weighted norm `Int e^{-3 sqrt x} e^{2 sqrt x} dx = 2`
//! exactly.  `k0sqrt` has Mellin transform `Gamma(s)^2`;  its `e^{2 sqrt x}`-
//! weighted norm is only marginally divergent (the integrand decays like
//! `x^{-1/4}`), which the norm checks treat as a truncated-domain estimate.
//! `gauss` and `t2gauss` are even and analytic with `g(0) = g'(0) = 0` in the
//! `t2gauss` case, as the inverse-direction inversion formula requires.

use crate::quad::QuadConfig;
use crate::sampled::{DecayTag, FunctionDomain, SampledFunction};
use crate::specfun::{macdonald_k, EULER_GAMMA};

/// `f(x) = e^{-3 sqrt x}` on the half-line.
pub fn exp3sqrt() -> SampledFunction {
    SampledFunction::from_fn(
        |x: f64| (-3.0 * x.sqrt()).exp(),
        FunctionDomain::HalfLine,
        DecayTag::ExpSqrt(3.0),
    )
    .expect("static decay tag")
}

/// `f(x) = 2 K_0(2 sqrt x)` on the half-line (Mellin transform `Gamma(s)^2`).
pub fn k0sqrt() -> SampledFunction {
    SampledFunction::from_fn(
        |x: f64| {
            if x <= 0.0 {
                return f64::INFINITY;
            }
            let z = 2.0 * x.sqrt();
            if z < 1e-6 {
                // K_0(z) = -ln(z/2) - gamma_E + O(z^2 ln z)
                2.0 * (-(0.5 * z).ln() - EULER_GAMMA)
            } else {
                2.0 * macdonald_k(0.0, z, &QuadConfig::with_tol(1e-12)).unwrap_or(f64::NAN)
            }
        },
        FunctionDomain::HalfLine,
        DecayTag::ExpSqrt(2.0),
    )
    .expect("static decay tag")
}

/// `g(tau) = e^{-tau^2}` on the real line.
pub fn gauss() -> SampledFunction {
    SampledFunction::from_fn(
        |t: f64| (-t * t).exp(),
        FunctionDomain::RealLine,
        DecayTag::Exp(2.0),
    )
    .expect("static decay tag")
}

/// `g(tau) = tau^2 e^{-tau^2}` on the real line (even, `g(0) = g'(0) = 0`).
pub fn t2gauss() -> SampledFunction {
    SampledFunction::from_fn(
        |t: f64| t * t * (-t * t).exp(),
        FunctionDomain::RealLine,
        DecayTag::Exp(2.0),
    )
    .expect("static decay tag")
}

/// Look up a builtin by name (the CLI's `builtin:NAME` syntax).
pub fn by_name(name: &str) -> Option<SampledFunction> {
    match name {
        "exp3sqrt" => Some(exp3sqrt()),
        "k0sqrt" => Some(k0sqrt()),
        "gauss" => Some(gauss()),
        "t2gauss" => Some(t2gauss()),
        _ => None,
    }
}
