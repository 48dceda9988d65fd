//! Bessel `J` of complex order, its order-derivative, and modified Bessel `I`.
//!
//! Everything is driven by the ascending series
//!
//! ```text
//! J_nu(z) = sum_k (-1)^k (z/2)^{2k+nu} / (k! Gamma(k+nu+1))
//! ```
//!
//! whose terms alternate: by `z ~ 16` the largest term exceeds the result by
//! ~1e7 and float cancellation starts eating digits, so beyond that the
//! Hankel large-argument expansion takes over (including its term-wise
//! nu-derivative, needed by the inversion formulas).

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, lgamma};
use crate::{Error, Result};

/// Truncation control for the ascending series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    /// Stop once a term falls below `rel_tol` times the partial sum.
    pub rel_tol: f64,
    /// Give up (with a `Convergence` error) after this many terms.
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 400,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 {
            return Err(Error::Domain(
                "series config needs rel_tol > 0 and max_terms >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Looser/longer budget for large arguments of the modified functions.
    pub fn extended() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 4000,
        }
    }
}

/// Argument above which `bessel_j` switches from the ascending series to the
/// Hankel expansion.  At z = 16 the series still carries ~1e-10 cancellation
/// error while the expansion is already below 1e-10 for |nu| <= 5.
const ASYMP_SWITCH_Z: f64 = 16.0;

fn finite_or_domain(v: Complex64, what: &str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} overflowed to a non-finite value")))
    }
}

/// Leading series coefficient `(z/2)^nu / Gamma(nu+1)`.
fn leading_term(nu: Complex64, z: f64) -> Result<Complex64> {
    let lg = lgamma(nu + 1.0)?;
    Ok((nu * (0.5 * z).ln() - lg).exp())
}

fn series_sum<FTerm>(
    nu: Complex64,
    z: f64,
    cfg: &SeriesConfig,
    sign: f64,
    mut on_term: FTerm,
) -> Result<Complex64>
where
    FTerm: FnMut(usize, Complex64),
{
    let t0 = leading_term(nu, z)?;
    on_term(0, t0);
    let mut term = t0;
    let mut sum = t0;
    let q = sign * 0.25 * z * z;
    let mut small_streak = 0;
    for k in 1..=cfg.max_terms {
        term = term * q / (k as f64 * (nu + k as f64));
        sum += term;
        on_term(k, term);
        if term.norm() <= cfg.rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                return finite_or_domain(sum, "bessel series");
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::Convergence {
        max_terms: cfg.max_terms,
        last_rel: term.norm() / sum.norm().max(f64::MIN_POSITIVE),
    })
}

/// Hankel expansion coefficients `c_m = A_m(nu)/z^m` and their nu-derivatives,
/// truncated where the terms stop decreasing.
fn hankel_coeffs(nu: Complex64, z: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let mu = 4.0 * nu * nu;
    let mut c = vec![Complex64::new(1.0, 0.0)];
    let mut d = vec![Complex64::new(0.0, 0.0)];
    let mut best = f64::INFINITY;
    for m in 1..=40 {
        let fm = m as f64;
        let factor = (mu - (2.0 * fm - 1.0).powi(2)) / (8.0 * z * fm);
        let cm = c[m - 1] * factor;
        let dm = d[m - 1] * factor + c[m - 1] * (nu / (z * fm));
        if cm.norm() >= best && cm.norm() < 1e-15 {
            break;
        }
        if cm.norm() > best * 4.0 {
            // divergent tail of the asymptotic series
            break;
        }
        best = best.min(cm.norm());
        c.push(cm);
        d.push(dm);
    }
    (c, d)
}

struct HankelParts {
    p: Complex64,
    q: Complex64,
    dp: Complex64,
    dq: Complex64,
}

fn hankel_parts(nu: Complex64, z: f64) -> HankelParts {
    let (c, d) = hankel_coeffs(nu, z);
    let mut parts = HankelParts {
        p: Complex64::new(0.0, 0.0),
        q: Complex64::new(0.0, 0.0),
        dp: Complex64::new(0.0, 0.0),
        dq: Complex64::new(0.0, 0.0),
    };
    for (m, (&cm, &dm)) in c.iter().zip(d.iter()).enumerate() {
        let sgn = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            parts.p += cm * sgn;
            parts.dp += dm * sgn;
        } else {
            parts.q += cm * sgn;
            parts.dq += dm * sgn;
        }
    }
    parts
}

fn hankel_j(nu: Complex64, z: f64) -> (Complex64, Complex64) {
    let parts = hankel_parts(nu, z);
    let omega = Complex64::new(z - PI / 4.0, 0.0) - nu * (PI / 2.0);
    let (sin_o, cos_o) = (omega.sin(), omega.cos());
    let amp = (2.0 / (PI * z)).sqrt();
    let j = (parts.p * cos_o - parts.q * sin_o) * amp;
    // d omega / d nu = -pi/2
    let dj = (parts.dp * cos_o - parts.dq * sin_o
        + (parts.p * sin_o + parts.q * cos_o) * (PI / 2.0))
        * amp;
    (j, dj)
}

/// Bessel function of the first kind `J_nu(z)` for complex order and real
/// `z > 0` (z = 0 allowed when `Re nu >= 0`).
pub fn bessel_j(nu: Complex64, z: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    if z < 0.0 {
        return Err(Error::Domain("bessel_j needs z >= 0".into()));
    }
    if z == 0.0 {
        return match (nu.re, nu.im) {
            (0.0, 0.0) => Ok(Complex64::new(1.0, 0.0)),
            (re, _) if re > 0.0 => Ok(Complex64::new(0.0, 0.0)),
            _ => Err(Error::Domain("J_nu(0) undefined for Re nu <= 0, nu != 0".into())),
        };
    }
    // Negative integer orders reduce to positive ones.
    if nu.im == 0.0 && nu.re < 0.0 && nu.re.fract() == 0.0 {
        let n = -nu.re;
        let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(bessel_j(Complex64::new(n, 0.0), z, cfg)? * sign);
    }
    if z > ASYMP_SWITCH_Z {
        return finite_or_domain(hankel_j(nu, z).0, "bessel_j asymptotic");
    }
    series_sum(nu, z, cfg, -1.0, |_, _| {})
}

/// Order-derivative `dJ_nu(z)/dnu` at `nu = nu0`, via the term-wise
/// differentiated series (each term picks up `ln(z/2) - psi(k+nu+1)`), or the
/// differentiated Hankel expansion past the series switchover.
pub fn bessel_j_dnu(nu0: Complex64, z: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    if !(z > 0.0) {
        return Err(Error::Domain("bessel_j_dnu needs z > 0".into()));
    }
    if z > ASYMP_SWITCH_Z {
        return finite_or_domain(hankel_j(nu0, z).1, "bessel_j_dnu asymptotic");
    }
    let ln_half_z = (0.5 * z).ln();
    let mut psi = digamma(nu0 + 1.0)?;
    let mut expect_k = 0usize;
    let mut acc = Complex64::new(0.0, 0.0);
    series_sum(nu0, z, cfg, -1.0, |k, term| {
        // psi(k + nu + 1) advances by 1/(k + nu) between consecutive terms
        while expect_k < k {
            psi += 1.0 / (nu0 + 1.0 + expect_k as f64);
            expect_k += 1;
        }
        acc += term * (ln_half_z - psi);
    })?;
    finite_or_domain(acc, "bessel_j_dnu series")
}

/// Modified Bessel function of the first kind `I_nu(x)` by the ascending
/// series (the `(-1)^k` of the `J` series dropped).
pub fn bessel_i(nu: Complex64, x: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    cfg.validate()?;
    if !(x > 0.0) {
        if x == 0.0 && nu.re == 0.0 && nu.im == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        return Err(Error::Domain("bessel_i needs x > 0".into()));
    }
    series_sum(nu, x, cfg, 1.0, |_, _| {})
}

/// Exponentially scaled modified Bessel `e^{-x} I_nu(x)`, stable for large x.
pub fn bessel_i_scaled(nu: Complex64, x: f64, cfg: &SeriesConfig) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain("bessel_i_scaled needs x > 0".into()));
    }
    if x <= 40.0 {
        return Ok(bessel_i(nu, x, cfg)? * (-x).exp());
    }
    // I_nu(x) ~ e^x / sqrt(2 pi x) * sum_m (-1)^m c_m
    let (c, _) = hankel_coeffs(nu, x);
    let mut s = Complex64::new(0.0, 0.0);
    for (m, &cm) in c.iter().enumerate() {
        let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
        s += cm * sgn;
    }
    finite_or_domain(s / (2.0 * PI * x).sqrt(), "bessel_i_scaled asymptotic")
}

/// `P`/`Q` Hankel sums for real order, shared with the Struve/Weber pieces.
/// Returns `(P, Q)` at order `nu` and argument `z`.
pub(crate) fn hankel_pq_real(nu: f64, z: f64) -> (f64, f64) {
    let parts = hankel_parts(Complex64::new(nu, 0.0), z);
    (parts.p.re, parts.q.re)
}

/// Asymptotic coefficient sum for the modified functions at parameter
/// `mu = 4 nu^2`: `sum_m c_m` (all-plus, giving `e^x K_nu` up to the
/// `sqrt(pi/2x)` prefactor) or `sum_m (-1)^m c_m` (alternating, `e^{-x} I_nu`).
pub(crate) fn hankel_pq_like(mu: f64, z: f64, alternating: bool) -> f64 {
    let mut c = 1.0f64;
    let mut sum = c;
    let mut best = f64::INFINITY;
    for m in 1..=40 {
        let fm = m as f64;
        c *= (mu - (2.0 * fm - 1.0).powi(2)) / (8.0 * z * fm);
        if c.abs() >= best && c.abs() < 1e-15 {
            break;
        }
        if c.abs() > best * 4.0 {
            break;
        }
        best = best.min(c.abs());
        sum += if alternating && m % 2 == 1 { -c } else { c };
    }
    sum
}
