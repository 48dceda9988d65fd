//! The transform kernel
//!
//! ```text
//! Phi_tau(x) = sqrt(pi)/cosh(pi tau) * Re[ J_{i tau}(sqrt x)^2 ]
//! ```
//!
//! by three independent routes — the defining squared-Bessel formula, a
//! Mellin–Barnes contour integral of gamma ratios, and a Fourier-cosine
//! representation through the modified Struve function — plus the residual of
//! the third-order ODE the kernel satisfies.
//!
//! The Mellin–Barnes integrand decays only like `|s|^{2 gamma - 3/2}` on a
//! straight vertical contour (its gamma-factor exponentials cancel exactly),
//! far too slowly to truncate at any reasonable height.  All its poles lie on
//! the two horizontal lines `Im s = +-tau`, `Re s <= 0`, so above them the
//! contour is bent 135 degrees into the left half-plane where the reciprocal
//! gamma factors give superexponential decay.  Conjugate symmetry folds the
//! lower half onto the upper one.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::quad::{
    differentiate, integrate_finite_with_breaks, integrate_semi_infinite,
    integrate_semi_infinite_osc, ContourSpec, DiffStencil, QuadConfig,
};
use crate::specfun::{bessel_j, lgamma, struve_l1_imag, SeriesConfig};
use crate::{Error, Result, SQRT_PI};

/// Evaluation route selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    Direct,
    MellinBarnes,
    CosineRep,
}

/// An evaluation site for the kernel.
#[derive(Debug, Clone, Copy)]
pub struct KernelPoint {
    pub tau: f64,
    pub x: f64,
    pub method: KernelMethod,
}

impl KernelPoint {
    pub fn validate(&self) -> Result<()> {
        if !(self.x > 0.0) {
            return Err(Error::Domain("kernel needs x > 0".into()));
        }
        Ok(())
    }
}

/// Evaluate a kernel point with the given contour/quadrature settings.
pub fn phi(point: &KernelPoint, contour: &ContourSpec, quad: &QuadConfig) -> Result<f64> {
    point.validate()?;
    match point.method {
        KernelMethod::Direct => phi_direct(point.tau, point.x),
        KernelMethod::MellinBarnes => phi_mellin_barnes(point.tau, point.x, contour),
        KernelMethod::CosineRep => {
            let stencil = DiffStencil::auto_with_noise(1, 4, point.x, 1e-10);
            phi_cosine_rep(point.tau, point.x, quad, &stencil)
        }
    }
}

/// `Phi_tau(x)` from the defining squared-Bessel formula.  Always real, with
/// `|Phi| <= sqrt(pi)`.
pub fn phi_direct(tau: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("phi_direct needs x > 0".into()));
    }
    let j = bessel_j(Complex64::new(0.0, tau), x.sqrt(), &SeriesConfig::default())?;
    let val = SQRT_PI * (j * j).re / (PI * tau).cosh();
    if val.is_finite() {
        Ok(val)
    } else {
        Err(Error::Domain(format!(
            "kernel overflowed at tau = {tau}, x = {x}"
        )))
    }
}

/// The Mellin–Barnes ratio
/// `Gamma(s+i tau) Gamma(s-i tau) Gamma(1/2-s) / (Gamma(s) Gamma(1-s)^2)`
/// times `x^{-s}`, via summed log-gammas so nothing over/underflows.
fn mb_integrand(s: Complex64, tau: f64, ln_x: f64) -> Complex64 {
    let itau = Complex64::new(0.0, tau);
    let lg = |z: Complex64| lgamma(z).unwrap_or(Complex64::new(f64::NEG_INFINITY, 0.0));
    let log_ratio = lg(s + itau) + lg(s - itau) + lg(0.5 - s) - lg(s) - 2.0 * lg(1.0 - s);
    (log_ratio - s * ln_x).exp()
}

/// On-contour integrand magnitude at `s = abscissa + i t` (used to verify the
/// algebraic decay exponent of the straight-line representation).
pub fn mb_integrand_magnitude(tau: f64, abscissa: f64, t: f64) -> f64 {
    mb_integrand(Complex64::new(abscissa, t), tau, 0.0).norm()
}

/// `Phi_tau(x)` as the contour integral of the gamma-ratio representation.
///
/// The contour runs up the line `Re s = abscissa` to just above the pole line
/// `Im s = |tau|`, then along a 135-degree ray into the left half-plane.  The
/// abscissa must lie in `(0, 1/4)`.
pub fn phi_mellin_barnes(tau: f64, x: f64, spec: &ContourSpec) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("phi_mellin_barnes needs x > 0".into()));
    }
    spec.validate()?;
    if !(spec.abscissa > 0.0 && spec.abscissa < 0.25) {
        return Err(Error::Contour {
            abscissa: spec.abscissa,
            lo: 0.0,
            hi: 0.25,
        });
    }
    let a = spec.abscissa;
    let ln_x = x.ln();
    let bend = tau.abs() + 1.5;

    // vertical leg: s = a + i t, ds = i dt
    let vertical = {
        let f = |t: f64| -> Result<Complex64> {
            Ok(mb_integrand(Complex64::new(a, t), tau, ln_x) * Complex64::i())
        };
        let mut breaks = vec![tau.abs() - 0.5, tau.abs() + 0.5];
        let mut t = spec.step_hint;
        while t < bend {
            breaks.push(t);
            t += 4.0 * spec.step_hint;
        }
        integrate_finite_with_breaks(f, 0.0, bend, &breaks, &QuadConfig::with_tol(1e-12))?.value
    };

    // ray leg: s = a + i*bend + u e^{i 3pi/4}, superexponentially decaying
    let dir = Complex64::from_polar(1.0, 3.0 * PI / 4.0);
    let start = Complex64::new(a, bend);
    let ray_f = |u: f64| -> Result<Complex64> { Ok(mb_integrand(start + dir * u, tau, ln_x) * dir) };
    let mut ray = Complex64::new(0.0, 0.0);
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while lo < spec.height {
        let seg = integrate_finite_with_breaks(ray_f, lo, hi, &[], &QuadConfig::with_tol(1e-12))?.value;
        ray += seg;
        if seg.norm() < 1e-17 * ray.norm().max(1e-3) && lo > 4.0 {
            break;
        }
        lo = hi;
        hi = (2.0 * hi).min(spec.height.max(lo + 1.0));
        if hi <= lo {
            break;
        }
    }

    // conjugate symmetry: full integral = 2 i Im(upper), so
    // (1/2 pi i) * full = Im(upper) / pi
    let val = (vertical + ray).im / PI;
    if val.is_finite() {
        Ok(val)
    } else {
        Err(Error::Domain("mellin-barnes kernel overflowed".into()))
    }
}

/// `Phi_tau(x)` through the Fourier-cosine/Struve representation: the
/// x-derivative (by central differences) of
/// `sqrt(x) * Int_0^inf cos(tau u)/cosh(u/2) L_1(2 i sqrt(x) cosh(u/2)) du`,
/// scaled by `-1/sqrt(pi)`.
pub fn phi_cosine_rep(tau: f64, x: f64, quad: &QuadConfig, stencil: &DiffStencil) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("phi_cosine_rep needs x > 0".into()));
    }
    let series = SeriesConfig::default();
    let inner = |xi: f64| -> Result<f64> {
        let sqrt_xi = xi.sqrt();
        let integrand = |u: f64| -> Result<f64> {
            let ch = (0.5 * u).cosh();
            // the Struve factor stays O(1); once sech(u/2) is below the tail
            // cutoff the integrand is dead (and cosh would soon overflow)
            if 1.0 / ch < quad.tail_cutoff {
                return Ok(0.0);
            }
            Ok((tau * u).cos() / ch * struve_l1_imag(sqrt_xi * ch, &series)?)
        };
        let out = if tau.abs() > 0.5 {
            integrate_semi_infinite_osc(integrand, 2.0 * PI / tau.abs(), quad)?
        } else {
            integrate_semi_infinite(integrand, quad)?
        };
        Ok(sqrt_xi * out.value)
    };

    let mut st = *stencil;
    st.h = st.h.min(x / (st.reach() as f64 + 1.0));
    let deriv = differentiate(|xi| inner(xi).unwrap_or(f64::NAN), x, &st)?;
    Ok(-deriv / SQRT_PI)
}

/// Magnitude of the cosine-representation u-integrand, exposed so tests can
/// verify the tail decay.
pub fn cosine_rep_integrand_magnitude(tau: f64, x: f64, u: f64) -> f64 {
    let ch = (0.5 * u).cosh();
    let l1 = struve_l1_imag(x.sqrt() * ch, &SeriesConfig::default()).unwrap_or(f64::NAN);
    ((tau * u).cos() / ch * l1).abs()
}

/// All pieces of the kernel ODE residual at one point.
#[derive(Debug, Clone, Copy)]
pub struct OdeResidualParts {
    pub phi: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    /// `x^2 Phi''' + 3 x Phi'' + (tau^2 + x + 1) Phi' + Phi/2`
    pub residual: f64,
    /// `max(1, x^2 |Phi'''|)`, the normalization used by the checks
    pub scale: f64,
}

/// Residual of the third-order kernel ODE, with derivatives of `phi_direct`
/// taken by central differences at the stencil's accuracy.
///
/// The equation follows from the classical product rule for solutions of a
/// second-order ODE: with `w = y1 y2` for solutions of
/// `y'' + y'/z + (1 - nu^2/z^2) y = 0`, one has
/// `w''' + (3/z) w'' + (4 + (1-4 nu^2)/z^2) w' + (4/z) w = 0`, and the
/// substitution `x = z^2`, `nu = i tau` turns this into
///
/// ```text
/// x^2 Phi''' + 3 x Phi'' + (tau^2 + x + 1) Phi' + Phi/2 = 0.
/// ```
///
/// (Real and imaginary parts satisfy it separately since the coefficients
/// are real, so the `Re` in the kernel definition is harmless.)
pub fn ode_residual_parts(tau: f64, x: f64, stencil: &DiffStencil) -> Result<OdeResidualParts> {
    if !(x > 0.0) {
        return Err(Error::Domain("ode_residual needs x > 0".into()));
    }
    let h = stencil.h.min(x / 4.0);
    let f = |xx: f64| phi_direct(tau, xx).unwrap_or(f64::NAN);
    let d = |order: usize| -> Result<f64> {
        differentiate(
            f,
            x,
            &DiffStencil {
                order,
                h,
                accuracy: stencil.accuracy,
            },
        )
    };
    let phi = phi_direct(tau, x)?;
    let d1 = d(1)?;
    let d2 = d(2)?;
    let d3 = d(3)?;
    let residual = x * x * d3 + 3.0 * x * d2 + (tau * tau + x + 1.0) * d1 + 0.5 * phi;
    Ok(OdeResidualParts {
        phi,
        d1,
        d2,
        d3,
        residual,
        scale: (x * x * d3.abs()).max(1.0),
    })
}

/// Raw ODE residual (see [`ode_residual_parts`]).
pub fn ode_residual(tau: f64, x: f64, stencil: &DiffStencil) -> Result<f64> {
    Ok(ode_residual_parts(tau, x, stencil)?.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent J_0 oracle (integral representation, fixed Simpson grid).
    fn j0_oracle(z: f64) -> f64 {
        let n = 4000;
        let h = PI / n as f64;
        let f = |t: f64| (z * t.sin()).cos();
        let mut s = f(0.0) + f(PI);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        s * h / 3.0 / PI
    }

    #[test]
    fn direct_kernel_at_zero_order() {
        // Phi_0(4) = sqrt(pi) J_0(2)^2
        let want = SQRT_PI * j0_oracle(2.0).powi(2);
        let got = phi_direct(0.0, 4.0).unwrap();
        assert!((got - want).abs() < 1e-11, "{got} vs {want}");
        // frozen value from the oracle
        assert!((got - 0.0888479377).abs() < 1e-9);
    }

    #[test]
    fn direct_kernel_bound_and_evenness_grid() {
        for &tau in &[0.0, 0.5, 1.0, 2.0, 5.0] {
            for &x in &[0.01, 0.1, 1.0, 10.0, 100.0] {
                let v = phi_direct(tau, x).unwrap();
                assert!(v.abs() <= SQRT_PI * (1.0 + 1e-12), "tau={tau} x={x}: {v}");
                let m = phi_direct(-tau, x).unwrap();
                assert!((v - m).abs() <= 1e-13 * (1.0 + v.abs()));
                // the underlying estimate |Re J^2| / cosh(pi tau) <= 1
                assert!(v.abs() / SQRT_PI <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn mellin_barnes_matches_direct() {
        let spec = ContourSpec::at(0.125);
        for &(tau, x) in &[(1.0, 1.0), (0.0, 4.0), (2.0, 0.3), (4.0, 20.0)] {
            let mb = phi_mellin_barnes(tau, x, &spec).unwrap();
            let direct = phi_direct(tau, x).unwrap();
            assert!(
                (mb - direct).abs() <= 1e-8 * (1.0 + direct.abs()),
                "tau={tau} x={x}: {mb} vs {direct}"
            );
        }
    }

    #[test]
    fn mellin_barnes_abscissa_invariance() {
        let a = phi_mellin_barnes(1.0, 2.0, &ContourSpec::at(0.1)).unwrap();
        let b = phi_mellin_barnes(1.0, 2.0, &ContourSpec::at(0.2)).unwrap();
        assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
    }

    #[test]
    fn mellin_barnes_rejects_bad_abscissa() {
        let err = phi_mellin_barnes(1.0, 1.0, &ContourSpec::at(0.3));
        assert!(matches!(err, Err(Error::Contour { .. })));
    }

    #[test]
    fn straight_contour_integrand_decay_exponent() {
        // |integrand| ~ |t|^{2 gamma - 3/2} on the vertical line
        for &gamma_a in &[0.1, 0.2] {
            let r40 = mb_integrand_magnitude(1.0, gamma_a, 40.0);
            let r80 = mb_integrand_magnitude(1.0, gamma_a, 80.0);
            let predicted = 2.0f64.powf(2.0 * gamma_a - 1.5);
            let observed = r80 / r40;
            assert!(
                (observed / predicted - 1.0).abs() < 0.1,
                "gamma={gamma_a}: observed {observed} predicted {predicted}"
            );
        }
    }

    #[test]
    fn cosine_rep_matches_direct() {
        let quad = QuadConfig::with_tol(1e-11);
        for &(tau, x) in &[(0.0, 1.0), (2.0, 0.5)] {
            let st = DiffStencil::auto_with_noise(1, 4, x, 1e-10);
            let cr = phi_cosine_rep(tau, x, &quad, &st).unwrap();
            let direct = phi_direct(tau, x).unwrap();
            assert!(
                (cr - direct).abs() <= 1e-5 * (1.0 + direct.abs()),
                "tau={tau} x={x}: {cr} vs {direct}"
            );
        }
    }

    #[test]
    fn cosine_rep_tail_is_negligible() {
        // integrand decays like sech(u/2); at u = 40 it is far below peak
        let peak: f64 = (0..200)
            .map(|i| cosine_rep_integrand_magnitude(0.0, 1.0, i as f64 * 0.05))
            .fold(0.0, f64::max);
        let tail = cosine_rep_integrand_magnitude(0.0, 1.0, 40.0);
        assert!(tail <= 1e-8 * peak, "tail {tail} peak {peak}");
    }

    #[test]
    fn ode_residual_small_on_samples() {
        for &(tau, x) in &[(1.0, 2.0), (0.0, 10.0), (3.0, 0.5)] {
            let st = DiffStencil::auto(3, 4, x);
            let parts = ode_residual_parts(tau, x, &st).unwrap();
            assert!(
                parts.residual.abs() <= 1e-6 * parts.scale,
                "tau={tau} x={x}: residual {} scale {}",
                parts.residual,
                parts.scale
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn kernel_even_and_bounded(tau in -4.0f64..4.0, x in 0.05f64..50.0) {
            let v = phi_direct(tau, x).unwrap();
            let m = phi_direct(-tau, x).unwrap();
            prop_assert!((v - m).abs() <= 1e-12 * (1.0 + v.abs()));
            prop_assert!(v.abs() <= SQRT_PI * (1.0 + 1e-12));
        }
    }
}
