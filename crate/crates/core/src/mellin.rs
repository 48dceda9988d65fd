//! Numerical Mellin transform machinery: the transform itself (by quadrature
//! after the substitution `x = e^u`), its vertical-line inversion, a Parseval
//! residual computed over two fully independent code paths, and the
//! gamma-product/Fourier-cosine reciprocal pair.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::quad::{
    integrate_real_line, integrate_semi_infinite, integrate_semi_infinite_osc,
    integrate_vertical_line, ContourSpec, QuadConfig,
};
use crate::sampled::SampledFunction;
use crate::specfun::gamma;
use crate::{Error, Result};

/// Vertical strip data for Mellin-side integrals: abscissa `nu` and the
/// Lebesgue exponent pair.  `q` is derived from `p`, so `1/p + 1/q = 1`
/// holds exactly as stored.
#[derive(Debug, Clone, Copy)]
pub struct MellinStrip {
    pub nu: f64,
    pub p: f64,
}

impl MellinStrip {
    pub fn new(nu: f64, p: f64) -> Result<Self> {
        if !(p > 1.0 && p <= 2.0) {
            return Err(Error::Domain(format!("p = {p} outside (1, 2]")));
        }
        Ok(Self { nu, p })
    }

    /// Conjugate exponent `q = p/(p-1)`.
    pub fn q(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// The abscissa window `0 < nu < 3/4 - 1/(2p)` required by the
    /// modified-Bessel route of the forward transform.
    pub fn valid_for_bessel_route(&self) -> bool {
        self.nu > 0.0 && self.nu < 0.75 - 0.5 / self.p
    }
}

/// Mellin transform `f*(s) = Int_0^inf f(x) x^{s-1} dx` by quadrature in
/// `u = ln x`.
///
/// `Re s` must lie inside the convergence strip implied by the function's
/// decay metadata, otherwise a `Strip` error is returned rather than a
/// silently divergent value.
pub fn mellin_transform(f: &SampledFunction, s: Complex64, cfg: &QuadConfig) -> Result<Complex64> {
    let (lo, hi) = f.mellin_strip();
    if !(s.re > lo && s.re < hi) {
        return Err(Error::Strip {
            re_s: s.re,
            lo,
            hi,
        });
    }
    // Int f(e^u) e^{s u} du over the whole line.  The kernel and the sample
    // are combined in log scale so a decayed f never meets an overflowing
    // exponential.
    let integrand = |u: f64| -> Result<Complex64> {
        let x = u.exp();
        let v = f.eval(x);
        if v == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if !v.is_finite() {
            return Err(Error::Domain(format!("non-finite sample at x = {x}")));
        }
        let magnitude = s.re * u + v.abs().ln();
        if magnitude < -745.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(Complex64::new(magnitude, s.im * u).exp() * v.signum())
    };
    Ok(integrate_real_line(integrand, cfg)?.value)
}

/// Inverse Mellin transform at `x`: a vertical-line contour integral at
/// abscissa `strip.nu`.
pub fn inverse_mellin<F>(f_star: F, strip: &MellinStrip, x: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    integrate_vertical_line(f_star, x, &ContourSpec::at(strip.nu))
}

/// Same, with an explicit contour (height/step control).
pub fn inverse_mellin_with_contour<F>(f_star: F, spec: &ContourSpec, x: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    integrate_vertical_line(f_star, x, spec)
}

/// Parseval residual: `| Int_0^inf f g dx  -  (1/2 pi i) Int f*(s) g*(1-s) ds |`.
///
/// The left side is a direct half-line quadrature; the right side goes
/// through two numerical Mellin transforms and a contour integral, so the
/// two sides share no code path and the residual is a genuine cross-check.
pub fn parseval_residual(
    f: &SampledFunction,
    g: &SampledFunction,
    strip: &MellinStrip,
    cfg: &QuadConfig,
) -> Result<f64> {
    let direct = integrate_semi_infinite(
        |x| {
            let v = f.eval(x) * g.eval(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Domain(format!("non-finite product at x = {x}")))
            }
        },
        cfg,
    )?
    .value;

    let spec = ContourSpec {
        abscissa: strip.nu,
        height: 40.0,
        step_hint: 0.25,
    };
    let contour = integrate_vertical_line(
        |s| {
            let fs = mellin_transform(f, s, cfg).unwrap_or(Complex64::new(f64::NAN, 0.0));
            let gs = mellin_transform(g, 1.0 - s, cfg).unwrap_or(Complex64::new(f64::NAN, 0.0));
            fs * gs
        },
        1.0,
        &spec,
    )?;
    Ok((contour - direct).norm())
}

/// Residual of the gamma-product/Fourier-cosine pair
///
/// ```text
/// Gamma(s+i tau) Gamma(s-i tau) = Gamma(2s)/2^{2s-1} *
///     Int_0^inf cos(tau y) / cosh^{2s}(y/2) dy,    Re s > 0
/// ```
///
/// with both sides evaluated independently (gamma on the left, quadrature on
/// the right).
pub fn gamma_cosine_pair_residual(s: Complex64, tau: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain("gamma-cosine pair needs Re s > 0".into()));
    }
    let itau = Complex64::new(0.0, tau);
    let lhs = gamma(s + itau)? * gamma(s - itau)?;

    let integrand = |y: f64| -> Result<Complex64> {
        // cosh^{-2s}(y/2) = exp(-2 s ln cosh(y/2)); ln cosh kept stable
        let half = 0.5 * y;
        let ln_cosh = if half > 20.0 {
            half - std::f64::consts::LN_2 + (-2.0 * half).exp().ln_1p()
        } else {
            half.cosh().ln()
        };
        Ok((s * (-2.0 * ln_cosh)).exp() * (tau * y).cos())
    };
    let integral = if tau.abs() > 0.5 {
        integrate_semi_infinite_osc(integrand, 2.0 * PI / tau.abs(), cfg)?.value
    } else {
        integrate_semi_infinite(integrand, cfg)?.value
    };
    let prefactor = (gamma(2.0 * s)?.ln() - (2.0 * s - 1.0) * std::f64::consts::LN_2).exp();
    Ok((lhs - prefactor * integral).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampled::{DecayTag, FunctionDomain};
    use crate::specfun::macdonald_k;

    fn exp_fn() -> SampledFunction {
        SampledFunction::from_fn(|x| (-x).exp(), FunctionDomain::HalfLine, DecayTag::Exp(1.0))
            .unwrap()
    }

    fn indicator01() -> SampledFunction {
        SampledFunction::from_fn(
            |x| if x <= 1.0 { 1.0 } else { 0.0 },
            FunctionDomain::HalfLine,
            DecayTag::Exp(10.0),
        )
        .unwrap()
    }

    fn k0_pair() -> SampledFunction {
        // f(x) = 2 K_0(2 sqrt x), whose Mellin transform is Gamma(s)^2
        SampledFunction::from_fn(
            |x: f64| {
                let z = 2.0 * x.sqrt();
                if z < 1e-6 {
                    2.0 * (-(0.5 * z).ln() - crate::specfun::EULER_GAMMA)
                } else {
                    2.0 * macdonald_k(0.0, z, &QuadConfig::with_tol(1e-12)).unwrap()
                }
            },
            FunctionDomain::HalfLine,
            DecayTag::ExpSqrt(2.0),
        )
        .unwrap()
    }

    #[test]
    fn mellin_of_exponential_is_gamma() {
        let f = exp_fn();
        let v = mellin_transform(&f, Complex64::new(3.0, 0.0), &QuadConfig::default()).unwrap();
        assert!((v.re - 2.0).abs() < 1e-9 && v.im.abs() < 1e-10, "{v}");
    }

    #[test]
    fn mellin_of_indicator() {
        let f = indicator01();
        let v = mellin_transform(&f, Complex64::new(2.0, 0.0), &QuadConfig::default()).unwrap();
        assert!((v.re - 0.5).abs() < 1e-8, "{v}");
    }

    #[test]
    fn mellin_of_macdonald_pair_is_gamma_squared() {
        let f = k0_pair();
        let s = Complex64::new(0.5, 1.0);
        let v = mellin_transform(&f, s, &QuadConfig::with_tol(1e-11)).unwrap();
        let want = gamma(s).unwrap() * gamma(s).unwrap();
        assert!((v - want).norm() < 1e-7 * want.norm().max(1.0), "{v} vs {want}");
    }

    #[test]
    fn strip_violation_is_rejected() {
        let f = SampledFunction::from_fn(
            |x| 1.0 / (1.0 + x * x),
            FunctionDomain::HalfLine,
            DecayTag::Power(2.0),
        )
        .unwrap();
        let err = mellin_transform(&f, Complex64::new(3.0, 0.0), &QuadConfig::default());
        assert!(matches!(err, Err(Error::Strip { .. })));
    }

    #[test]
    fn inverse_of_gamma_is_exponential() {
        let strip = MellinStrip::new(0.5, 1.5).unwrap();
        let v = inverse_mellin(|s| gamma(s).unwrap(), &strip, 2.0).unwrap();
        assert!(
            (v.re - (-2.0f64).exp()).abs() < 1e-10 && v.im.abs() < 1e-9,
            "{v}"
        );
    }

    #[test]
    fn inverse_of_constant_raises_truncation() {
        let strip = MellinStrip::new(0.5, 1.5).unwrap();
        let err = inverse_mellin(|_| Complex64::new(1.0, 0.0), &strip, 2.0);
        assert!(matches!(err, Err(Error::Truncation { .. })));
    }

    #[test]
    fn inverse_of_gamma_squared_is_macdonald() {
        let strip = MellinStrip::new(0.5, 1.5).unwrap();
        let v = inverse_mellin(
            |s| {
                let g = gamma(s).unwrap();
                g * g
            },
            &strip,
            0.25,
        )
        .unwrap();
        // 2 K_0(2 sqrt(1/4)) = 2 K_0(1), via the cosh-integral oracle
        let want = 2.0 * macdonald_k(0.0, 1.0, &QuadConfig::with_tol(1e-12)).unwrap();
        assert!((v.re - want).abs() < 1e-9 && v.im.abs() < 1e-9, "{v} vs {want}");
    }

    #[test]
    fn contour_shift_invariance() {
        for &nu in &[0.5, 1.5] {
            let strip = MellinStrip::new(nu, 1.5).unwrap();
            let v = inverse_mellin(|s| gamma(s).unwrap(), &strip, 1.0).unwrap();
            assert!((v.re - (-1.0f64).exp()).abs() < 1e-10, "nu={nu}: {v}");
        }
    }

    #[test]
    fn mellin_inverse_round_trip() {
        let cfg = QuadConfig::with_tol(1e-11);
        let strip = MellinStrip::new(0.5, 1.5).unwrap();
        let f = exp_fn();
        for &x in &[0.1, 1.0, 10.0] {
            let v = inverse_mellin_with_contour(
                |s| mellin_transform(&f, s, &cfg).unwrap(),
                &ContourSpec {
                    abscissa: strip.nu,
                    height: 30.0,
                    step_hint: 0.25,
                },
                x,
            )
            .unwrap();
            let want = (-x).exp();
            assert!(
                (v.re - want).abs() < 1e-7 * want.max(1e-3) && v.im.abs() < 1e-8,
                "x={x}: {v} vs {want}"
            );
        }
    }

    #[test]
    fn mellin_inverse_round_trip_macdonald_pair() {
        let cfg = QuadConfig::with_tol(1e-11);
        let strip = MellinStrip::new(0.75, 1.5).unwrap();
        let f = k0_pair();
        for &x in &[0.1, 1.0] {
            let v = inverse_mellin_with_contour(
                |s| mellin_transform(&f, s, &cfg).unwrap(),
                &ContourSpec {
                    abscissa: strip.nu,
                    height: 30.0,
                    step_hint: 0.25,
                },
                x,
            )
            .unwrap();
            let want = f.eval(x);
            assert!(
                (v.re - want).abs() < 1e-7 * want.abs().max(1.0),
                "x={x}: {v} vs {want}"
            );
        }
    }

    #[test]
    fn parseval_exponential_pair() {
        // Int e^{-2x} = 1/2; compare against the contour route
        let f = exp_fn();
        let strip = MellinStrip::new(0.5, 2.0).unwrap();
        let res = parseval_residual(&f, &f, &strip, &QuadConfig::with_tol(1e-11)).unwrap();
        assert!(res <= 1e-8, "residual {res}");
        let direct = integrate_semi_infinite(|x| Ok((-2.0 * x).exp()), &QuadConfig::default())
            .unwrap()
            .value;
        assert!((direct - 0.5).abs() < 1e-11);
    }

    #[test]
    fn parseval_exponential_indicator() {
        let f = exp_fn();
        let g = indicator01();
        let strip = MellinStrip::new(0.5, 2.0).unwrap();
        let res = parseval_residual(&f, &g, &strip, &QuadConfig::with_tol(1e-11)).unwrap();
        assert!(res <= 1e-8, "residual {res}");
        let direct = 1.0 - (-1.0f64).exp();
        let lhs = integrate_semi_infinite(
            |x| Ok(f.eval(x) * g.eval(x)),
            &QuadConfig::default(),
        )
        .unwrap()
        .value;
        assert!((lhs - direct).abs() < 1e-9);
    }

    #[test]
    fn scale_covariance() {
        let cfg = QuadConfig::with_tol(1e-11);
        let c = 2.0;
        let f = exp_fn();
        let fc = SampledFunction::from_fn(
            move |x| (-c * x).exp(),
            FunctionDomain::HalfLine,
            DecayTag::Exp(2.0),
        )
        .unwrap();
        let s = Complex64::new(0.7, 0.4);
        let plain = mellin_transform(&f, s, &cfg).unwrap();
        let scaled = mellin_transform(&fc, s, &cfg).unwrap();
        // f(cx) has transform c^{-s} f*(s)
        let want = (-s * c.ln()).exp() * plain;
        assert!((scaled - want).norm() < 1e-8, "{scaled} vs {want}");

        // Parseval residual stays small for the rescaled pair
        let strip = MellinStrip::new(0.5, 2.0).unwrap();
        let res = parseval_residual(&fc, &f, &strip, &cfg).unwrap();
        assert!(res <= 1e-8, "residual {res}");
    }

    #[test]
    fn gamma_cosine_pair_elementary_case() {
        // s = 1, tau = 0: Gamma(1)^2 = (Gamma(2)/2) * Int sech^2(y/2) dy = 1
        let res =
            gamma_cosine_pair_residual(Complex64::new(1.0, 0.0), 0.0, &QuadConfig::with_tol(1e-12))
                .unwrap();
        assert!(res <= 1e-10, "residual {res}");
    }

    #[test]
    fn gamma_cosine_pair_residuals() {
        let cfg = QuadConfig::with_tol(1e-12);
        for &(re, im, tau) in &[(1.0, 0.0, 1.0), (1.5, 0.0, 2.0), (2.0, 0.5, 1.0)] {
            let res = gamma_cosine_pair_residual(Complex64::new(re, im), tau, &cfg).unwrap();
            assert!(res <= 1e-9, "s=({re},{im}) tau={tau}: residual {res}");
        }
    }

    #[test]
    fn gamma_product_cosine_transform_in_tau() {
        // the reciprocal direction: Int_0^inf Gamma(s+i tau) Gamma(s-i tau)
        // cos(tau y) d tau = pi Gamma(2s) / (2^{2s} cosh^{2s}(y/2)) at s = 1,
        // where the product is pi tau / sinh(pi tau)
        let cfg = QuadConfig::with_tol(1e-12);
        for &y in &[0.5, 1.0, 2.0] {
            let lhs = integrate_semi_infinite(
                |tau: f64| {
                    let v = if tau < 1e-12 {
                        1.0
                    } else {
                        PI * tau / (PI * tau).sinh()
                    };
                    Ok(v * (tau * y).cos())
                },
                &cfg,
            )
            .unwrap()
            .value;
            let rhs = PI / (4.0 * (0.5 * y).cosh().powi(2));
            assert!((lhs - rhs).abs() <= 1e-8, "y={y}: {lhs} vs {rhs}");
        }
    }
}
