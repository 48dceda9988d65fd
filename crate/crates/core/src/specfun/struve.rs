//! Modified Struve function of index one at purely imaginary argument.
//!
//! For `w >= 0` the value `L_1(2 i w)` is real:
//!
//! ```text
//! L_1(2 i w) = sum_{k>=0} (-1)^{k+1} w^{2k+2} / (Gamma(k+3/2) Gamma(k+5/2))
//!            = -H_1(2 w)                       (ordinary Struve function)
//! ```
//!
//! The alternating series loses roughly `w^2 log10 e` digits, so past the
//! switchover it is replaced by `-H_1(2w)` with `H_1 = Y_1 + ` an algebraic
//! correction series, both evaluated by large-argument expansions (the
//! arguments reach `2 sqrt(x) cosh(u/2)`, far beyond what the Poisson-type
//! integral could resolve).

use std::f64::consts::PI;

use super::bessel::hankel_pq_real;
use super::SeriesConfig;
use crate::{Error, Result};

/// Series/asymptotic switchover; at w = 8 the series still holds ~1e-10.
const STRUVE_SWITCH_W: f64 = 8.0;

/// `L_1(2 i w)` for `w >= 0` (real-valued).
pub fn struve_l1_imag(w: f64, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    if w < 0.0 {
        return Err(Error::Domain("struve_l1_imag needs w >= 0".into()));
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    if w < STRUVE_SWITCH_W {
        // t_0 = -w^2 / (Gamma(3/2) Gamma(5/2)) = -8 w^2 / (3 pi)
        let mut term = -w * w * 8.0 / (3.0 * PI);
        let mut sum = term;
        for k in 0..cfg.max_terms {
            let kf = k as f64;
            term *= -w * w / ((kf + 2.5) * (kf + 1.5));
            sum += term;
            if term.abs() <= cfg.rel_tol * sum.abs().max(f64::MIN_POSITIVE) {
                return Ok(sum);
            }
        }
        return Err(Error::Convergence {
            max_terms: cfg.max_terms,
            last_rel: term.abs() / sum.abs().max(f64::MIN_POSITIVE),
        });
    }
    Ok(-struve_h1_large(2.0 * w))
}

/// `H_1(z)` for large `z` via `H_1 = Y_1 + (1/pi) sum_k Gamma(k+1/2)
/// (z/2)^{-2k} / Gamma(3/2-k)` (asymptotic) and the Hankel expansion of `Y_1`.
fn struve_h1_large(z: f64) -> f64 {
    let (p, q) = hankel_pq_real(1.0, z);
    let omega = z - 3.0 * PI / 4.0; // z - nu pi/2 - pi/4 at nu = 1
    let y1 = (2.0 / (PI * z)).sqrt() * (p * omega.sin() + q * omega.cos());

    // correction series: term_0 = 2/pi, ratio (k+1/2)(1/2-k)(2/z)^2
    let mut term = 2.0 / PI;
    let mut sum = term;
    let mut best = f64::INFINITY;
    for k in 0..30 {
        let kf = k as f64;
        term *= (kf + 0.5) * (0.5 - kf) * (2.0 / z) * (2.0 / z);
        if term.abs() >= best {
            break;
        }
        best = term.abs();
        sum += term;
    }
    y1 + sum
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Poisson-type integral oracle: H_1(z) = (2 z / pi) Int_0^{pi/2}
    /// sin(z cos t) sin^2 t dt, by fixed-grid Simpson (test-only; usable for
    /// moderate z where the oscillation count stays small).
    fn h1_poisson_oracle(z: f64) -> f64 {
        let n = 100_000;
        let h = PI / 2.0 / n as f64;
        let f = |t: f64| (z * t.cos()).sin() * t.sin() * t.sin();
        let mut s = f(0.0) + f(PI / 2.0);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        (s * h / 3.0) * 2.0 * z / PI
    }

    #[test]
    fn zero_argument() {
        assert_eq!(struve_l1_imag(0.0, &SeriesConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn series_matches_poisson_oracle() {
        // L_1(2iw) = -H_1(2w) checked at w = 1 against the integral oracle
        let got = struve_l1_imag(1.0, &SeriesConfig::default()).unwrap();
        let want = -h1_poisson_oracle(2.0);
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn asymptotic_matches_poisson_oracle() {
        for &w in &[9.0, 15.0, 30.0] {
            let got = struve_l1_imag(w, &SeriesConfig::default()).unwrap();
            let want = -h1_poisson_oracle(2.0 * w);
            assert!((got - want).abs() < 1e-8, "w={w}: {got} vs {want}");
        }
    }

    #[test]
    fn series_asymptotic_continuity_at_switch() {
        let cfg = SeriesConfig::default();
        let below = struve_l1_imag(STRUVE_SWITCH_W - 1e-9, &cfg).unwrap();
        let above = struve_l1_imag(STRUVE_SWITCH_W + 1e-9, &cfg).unwrap();
        assert!((below - above).abs() < 1e-8, "{below} vs {above}");
    }

    #[test]
    fn large_argument_plateau() {
        // H_1 -> 2/pi, so L_1(2iw) -> -2/pi
        let got = struve_l1_imag(50.0, &SeriesConfig::default()).unwrap();
        assert!((got - (-2.0 / PI)).abs() < 0.05, "{got}");
    }
}
