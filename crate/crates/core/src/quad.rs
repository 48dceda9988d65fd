//! Quadrature engines shared by every higher module: adaptive Gauss–Kronrod
//! panels on finite, semi-infinite and whole-line domains, vertical-line
//! contour integration for Mellin-type integrals, and central finite
//! difference stencils.
//!
//! Semi-infinite integrals are mapped onto (0, 1) by `x = t / (1 - t)`, so a
//! power-law tail in `x` becomes a bounded smooth integrand in `t` and the
//! panel subdivision resolves every scale.  A set of fixed initial panel
//! breaks spanning `x ~ 1e-1 .. 1e6` prevents the first Kronrod pass from
//! overlooking features far from the origin.

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerances and limits for adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Absolute tolerance on the integral value.
    pub abs_tol: f64,
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Maximum bisection depth per initial panel.
    pub max_depth: usize,
    /// Integrand-magnitude threshold for truncating infinite tails.
    pub tail_cutoff: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 40,
            tail_cutoff: 1e-16,
        }
    }
}

impl QuadConfig {
    /// Check the type invariants (positive tolerances, at least one level).
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.tail_cutoff > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_depth < 1 {
            return Err(Error::Domain("max_depth must be >= 1".into()));
        }
        Ok(())
    }

    /// A copy with both tolerances tightened to `tol`.
    pub fn with_tol(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..Self::default()
        }
    }
}

/// Vertical-line contour for Mellin–Barnes style integrals.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec {
    /// Fixed real part of `s` on the contour.
    pub abscissa: f64,
    /// Truncation extent along the contour (`|Im s| <= height` for straight
    /// contours; total path length for bent contours).
    pub height: f64,
    /// Initial panel size along the contour.
    pub step_hint: f64,
}

impl ContourSpec {
    /// Contour at the given abscissa with default height 60 and step 0.25.
    pub fn at(abscissa: f64) -> Self {
        Self {
            abscissa,
            height: 60.0,
            step_hint: 0.25,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.height > 0.0 && self.step_hint > 0.0) {
            return Err(Error::Domain("contour height and step_hint must be positive".into()));
        }
        Ok(())
    }
}

/// Central finite-difference stencil.
#[derive(Debug, Clone, Copy)]
pub struct DiffStencil {
    /// Derivative order, 1..=3.
    pub order: usize,
    /// Step size.
    pub h: f64,
    /// Order of accuracy, 2 or 4.
    pub accuracy: usize,
}

impl DiffStencil {
    /// Stencil with the truncation/roundoff-balancing step
    /// `h = eps^(1/(order+accuracy)) * max(1, |x|)`.
    pub fn auto(order: usize, accuracy: usize, x: f64) -> Self {
        let h = f64::EPSILON.powf(1.0 / (order + accuracy) as f64) * x.abs().max(1.0);
        Self { order, h, accuracy }
    }

    /// Same step rule but with an explicit noise floor for integrand values
    /// that are themselves quadrature results rather than exact evaluations.
    pub fn auto_with_noise(order: usize, accuracy: usize, x: f64, noise: f64) -> Self {
        let h = noise.max(f64::EPSILON).powf(1.0 / (order + accuracy) as f64) * x.abs().max(1.0);
        Self { order, h, accuracy }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) {
            return Err(Error::Domain("stencil step must be positive".into()));
        }
        if !matches!(self.order, 1..=3) || !matches!(self.accuracy, 2 | 4) {
            return Err(Error::Domain(format!(
                "unsupported stencil order {} / accuracy {}",
                self.order, self.accuracy
            )));
        }
        Ok(())
    }

    /// Symmetric coefficients for offsets `-n..=n`, to be divided by `h^order`.
    fn coefficients(&self) -> &'static [f64] {
        match (self.order, self.accuracy) {
            (1, 2) => &[-0.5, 0.0, 0.5],
            (1, 4) => &[1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
            (2, 2) => &[1.0, -2.0, 1.0],
            (2, 4) => &[-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0],
            (3, 2) => &[-0.5, 1.0, 0.0, -1.0, 0.5],
            (3, 4) => &[1.0 / 8.0, -1.0, 13.0 / 8.0, 0.0, -13.0 / 8.0, 1.0, -1.0 / 8.0],
            _ => unreachable!("validated"),
        }
    }

    /// Half-width of the stencil in steps.
    pub fn reach(&self) -> usize {
        self.coefficients().len() / 2
    }
}

/// Central-difference derivative of `f` at `x`.
///
/// Returns a `Domain` error when any stencil node produces a non-finite
/// value (the usual sign that the stencil left the function's domain).
pub fn differentiate<F: Fn(f64) -> f64>(f: F, x: f64, stencil: &DiffStencil) -> Result<f64> {
    stencil.validate()?;
    let coeffs = stencil.coefficients();
    let reach = coeffs.len() / 2;
    let mut acc = 0.0;
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let xi = x + (i as f64 - reach as f64) * stencil.h;
        let v = f(xi);
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "non-finite sample at stencil node {xi}"
            )));
        }
        acc += c * v;
    }
    Ok(acc / stencil.h.powi(stencil.order as i32))
}

/// Integral value together with the accumulated Kronrod error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome<T> {
    pub value: T,
    pub error_estimate: f64,
}

/// Scalar types the panel engine can accumulate: `f64` and `Complex64`.
pub trait QuadScalar:
    Copy + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> + std::ops::Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn norm(&self) -> f64;
    fn finite(&self) -> bool;
}

impl QuadScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl QuadScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn norm(&self) -> f64 {
        num_complex::Complex::norm(*self)
    }
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

// 15-point Kronrod extension of 7-point Gauss (QUADPACK QK15 nodes/weights).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_7,
    0.949_107_912_342_758_524_526_189_7,
    0.864_864_423_359_769_072_789_712_8,
    0.741_531_185_599_394_439_863_864_8,
    0.586_087_235_467_691_130_294_144_8,
    0.405_845_151_377_397_166_906_606_4,
    0.207_784_955_007_898_467_600_689_4,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_0,
    0.063_092_092_629_978_553_290_700_7,
    0.104_790_010_322_250_183_839_876_3,
    0.140_653_259_715_525_918_745_189_6,
    0.169_004_726_639_267_902_826_583_4,
    0.190_350_578_064_785_409_913_256_4,
    0.204_432_940_075_298_892_414_162_0,
    0.209_482_141_084_727_828_012_999_2,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_4,
    0.279_705_391_489_276_667_901_467_8,
    0.381_830_050_505_118_944_950_369_8,
    0.417_959_183_673_469_387_755_102_0,
];

/// One G7/K15 evaluation on `[a, b]`: returns (kronrod, |kronrod - gauss|).
fn gk15<T: QuadScalar, F: Fn(f64) -> Result<T>>(f: &F, a: f64, b: f64) -> Result<(T, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut kron = T::zero();
    let mut gauss = T::zero();
    for j in 0..8 {
        let (vplus, vminus) = if j == 7 {
            let v = f(mid)?;
            (v, T::zero())
        } else {
            (f(mid + half * XGK[j])?, f(mid - half * XGK[j])?)
        };
        if !vplus.finite() || !vminus.finite() {
            return Err(Error::Domain(format!(
                "non-finite integrand sample in panel [{a}, {b}]"
            )));
        }
        let pair = if j == 7 { vplus } else { vplus + vminus };
        kron = kron + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        } else if j == 7 {
            gauss = gauss + pair * WG[3];
        }
    }
    kron = kron * half;
    gauss = gauss * half;
    Ok((kron, (kron - gauss).norm()))
}

// Hard cap on refinement panels per integral; past it the panel is accepted
// with its current error so roundoff-floored budgets cannot explode the
// bisection tree.
const MAX_PANELS: usize = 16_384;

fn adapt_panel<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: &F,
    a: f64,
    b: f64,
    budget: f64,
    depth: usize,
    max_depth: usize,
    panels_left: &mut usize,
    value: &mut T,
    err: &mut f64,
    depth_exhausted: &mut bool,
) -> Result<()> {
    let (kron, e) = gk15(f, a, b)?;
    let out_of_room = depth >= max_depth || *panels_left == 0;
    if e <= budget || out_of_room {
        if e > budget && out_of_room {
            *depth_exhausted = true;
        }
        *value = *value + kron;
        *err += e;
        return Ok(());
    }
    *panels_left -= 1;
    let mid = 0.5 * (a + b);
    adapt_panel(f, a, mid, 0.5 * budget, depth + 1, max_depth, panels_left, value, err, depth_exhausted)?;
    adapt_panel(f, mid, b, 0.5 * budget, depth + 1, max_depth, panels_left, value, err, depth_exhausted)
}

/// Adaptive integral of `f` over the finite interval `[a, b]`, with optional
/// interior breakpoints that seed the initial panel set.
pub fn integrate_finite_with_breaks<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadOutcome<T>> {
    cfg.validate()?;
    let mut edges = vec![a];
    for &p in breaks {
        if p > a && p < b {
            edges.push(p);
        }
    }
    edges.push(b);
    edges.sort_by(|p, q| p.partial_cmp(q).unwrap());
    edges.dedup();

    // Rough first pass to scale the relative tolerance.
    let mut rough = T::zero();
    for w in edges.windows(2) {
        let (k, _) = gk15(&f, w[0], w[1])?;
        rough = rough + k;
    }
    let tol = cfg.abs_tol.max(cfg.rel_tol * rough.norm());
    let total_len: f64 = b - a;

    let mut value = T::zero();
    let mut err = 0.0;
    let mut exhausted = false;
    let mut panels_left = MAX_PANELS;
    for w in edges.windows(2) {
        let budget = tol * ((w[1] - w[0]) / total_len).max(1e-6);
        adapt_panel(
            &f,
            w[0],
            w[1],
            budget,
            0,
            cfg.max_depth,
            &mut panels_left,
            &mut value,
            &mut err,
            &mut exhausted,
        )?;
    }

    let allowed = cfg.abs_tol.max(cfg.rel_tol * value.norm());
    if exhausted && err > allowed {
        return Err(Error::Quadrature {
            estimate: err,
            allowed,
        });
    }
    Ok(QuadOutcome {
        value,
        error_estimate: err.min(allowed),
    })
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate_finite<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadOutcome<T>> {
    integrate_finite_with_breaks(f, a, b, &[], cfg)
}

// Initial breakpoints in x-space for the (0, inf) map: force the adaptive
// pass to look at every decade before trusting its error estimate.
const SEMI_INF_BREAKS_X: [f64; 10] = [0.125, 0.5, 1.0, 4.0, 16.0, 64.0, 256.0, 1024.0, 1.6e4, 1e6];

fn map_to_unit(x: f64) -> f64 {
    x / (1.0 + x)
}

/// Adaptive integral of `f` over `(0, inf)` via the map `x = t/(1-t)`.
///
/// Additional interior breakpoints (in the original variable) may be supplied
/// for integrands with known structure, e.g. oscillation zeros.
pub fn integrate_semi_infinite_with_breaks<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: F,
    breaks_x: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadOutcome<T>> {
    let g = |t: f64| -> Result<T> {
        let om = 1.0 - t;
        let x = t / om;
        Ok(f(x)? * (1.0 / (om * om)))
    };
    let mut breaks_t: Vec<f64> = SEMI_INF_BREAKS_X
        .iter()
        .chain(breaks_x.iter())
        .map(|&x| map_to_unit(x))
        .collect();
    breaks_t.sort_by(|p, q| p.partial_cmp(q).unwrap());
    integrate_finite_with_breaks(g, 0.0, 1.0, &breaks_t, cfg)
}

/// Adaptive integral of `f` over `(0, inf)`.
pub fn integrate_semi_infinite<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: F,
    cfg: &QuadConfig,
) -> Result<QuadOutcome<T>> {
    integrate_semi_infinite_with_breaks(f, &[], cfg)
}

/// Semi-infinite integral of an oscillatory integrand: the caller supplies
/// the oscillation wavelength and panels are pre-split at that spacing near
/// the origin so no oscillation is aliased away.
pub fn integrate_semi_infinite_osc<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: F,
    wavelength: f64,
    cfg: &QuadConfig,
) -> Result<QuadOutcome<T>> {
    if !(wavelength > 0.0) {
        return Err(Error::Domain("oscillation wavelength must be positive".into()));
    }
    let breaks: Vec<f64> = (1..=64).map(|k| k as f64 * 0.5 * wavelength).collect();
    integrate_semi_infinite_with_breaks(f, &breaks, cfg)
}

/// Adaptive integral of `f` over the whole real line (two mapped half-lines).
pub fn integrate_real_line<T: QuadScalar, F: Fn(f64) -> Result<T>>(
    f: F,
    cfg: &QuadConfig,
) -> Result<QuadOutcome<T>> {
    let plus = integrate_semi_infinite(|x| f(x), cfg)?;
    let minus = integrate_semi_infinite(|x| f(-x), cfg)?;
    Ok(QuadOutcome {
        value: plus.value + minus.value,
        error_estimate: plus.error_estimate + minus.error_estimate,
    })
}

/// `(1/2 pi i) * Integral F(s) x^{-s} ds` along the straight vertical line
/// `Re s = spec.abscissa`, truncated at `|Im s| <= spec.height`.
///
/// Intended for integrands that decay at least exponentially along the
/// contour (gamma-function ratios).  If the integrand has not decayed to
/// `1e-12` of its on-contour peak at the truncation height, a `Truncation`
/// error is raised instead of silently returning a wrong value.
pub fn integrate_vertical_line<F: Fn(Complex64) -> Complex64>(
    f: F,
    x: f64,
    spec: &ContourSpec,
) -> Result<Complex64> {
    spec.validate()?;
    if !(x > 0.0) {
        return Err(Error::Domain("vertical-line integral needs x > 0".into()));
    }
    let a = spec.abscissa;
    let ln_x = x.ln();
    let integrand = |t: f64| -> Result<Complex64> {
        let s = Complex64::new(a, t);
        // x^{-s} = exp(-s ln x)
        let val = f(s) * (-s * ln_x).exp();
        Ok(val)
    };

    // Peak / tail diagnostic on a coarse scan of |F| itself.
    let mut peak: f64 = 0.0;
    let scan_step = spec.step_hint.max(spec.height / 512.0);
    let mut t = 0.0;
    while t <= spec.height {
        let m = f(Complex64::new(a, t)).norm().max(f(Complex64::new(a, -t)).norm());
        if !m.is_finite() {
            return Err(Error::Domain(format!(
                "non-finite contour integrand at Im s = {t}"
            )));
        }
        peak = peak.max(m);
        t += scan_step;
    }
    let edge = f(Complex64::new(a, spec.height))
        .norm()
        .max(f(Complex64::new(a, -spec.height)).norm());
    if peak > 0.0 && edge > 1e-12 * peak {
        return Err(Error::Truncation {
            ratio: edge / peak,
            height: spec.height,
        });
    }

    let breaks: Vec<f64> = {
        let mut v = Vec::new();
        let mut t = -spec.height + spec.step_hint;
        while t < spec.height {
            v.push(t);
            t += spec.step_hint.max(spec.height / 4096.0);
        }
        v
    };
    let cfg = QuadConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        ..QuadConfig::default()
    };
    let out = integrate_finite_with_breaks(integrand, -spec.height, spec.height, &breaks, &cfg)?;
    // ds = i dt, so (1/2 pi i) Int F ds = (1/2 pi) Int F dt.
    Ok(out.value / (2.0 * std::f64::consts::PI))
}

/// Integral over `(0, inf)` computed on a growing sequence of finite spans
/// `(0, X], (X, 2X], ...` until the increments fall below the tolerance.
///
/// This is the workhorse behind the numerical finiteness checks of weighted
/// norms: a divergent integrand makes the partial sums grow without the
/// increments shrinking, which is reported as a `Quadrature` error.
pub fn integrate_growing<F: Fn(f64) -> Result<f64>>(
    f: F,
    first_span: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    let mut hi = first_span.max(1e-3);
    let mut total = integrate_finite(&f, 0.0, hi, cfg)?.value;
    for _ in 0..48 {
        let next = 2.0 * hi;
        let inc = integrate_finite(&f, hi, next, cfg)?.value;
        total += inc;
        hi = next;
        if inc.abs() <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            return Ok(total);
        }
        if !total.is_finite() || total.abs() > 1e12 {
            break;
        }
    }
    Err(Error::Quadrature {
        estimate: f64::INFINITY,
        allowed: cfg.abs_tol,
    })
}
