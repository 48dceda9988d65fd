//! Gamma, log-gamma and digamma for complex arguments.
//!
//! The right half-plane uses the Lanczos approximation with `g = 607/128`
//! and fourteen coefficients, which keeps the relative error near 1e-14
//! uniformly on the vertical contours the Mellin machinery integrates over.
//! The left half-plane goes through the reflection formula with a
//! log-stable `ln sin(pi z)` so large imaginary parts neither overflow nor
//! lose precision.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0; // 4.7421875
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COEF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_502_4;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn pole_check(z: Complex64) -> Result<()> {
    if is_nonpositive_integer(z) {
        Err(Error::Pole { re: z.re, im: z.im })
    } else {
        Ok(())
    }
}

/// Lanczos log-gamma, valid for `Re z >= 0.5`.
fn lgamma_right(z: Complex64) -> Complex64 {
    let t = z + (LANCZOS_G + 0.5);
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for (j, &c) in LANCZOS_COEF.iter().enumerate() {
        ser += c / (z + (j as f64 + 1.0));
    }
    (z + 0.5) * t.ln() - t + (SQRT_TWO_PI * ser / z).ln()
}

/// `ln sin(pi z)` without overflow for large `|Im z|`.
///
/// The branch is only consistent modulo `2 pi i`, which is all the callers
/// need because every use ends in an `exp` of a sum of log-gammas.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if z.im > 0.5 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw}),   |e^{2iw}| = e^{-2 pi Im z} < 1
        let q = (Complex64::i() * 2.0 * w).exp();
        Complex64::new(-std::f64::consts::LN_2, PI / 2.0) - Complex64::i() * w + (1.0 - q).ln()
    } else if z.im < -0.5 {
        ln_sin_pi(z.conj()).conj()
    } else {
        w.sin().ln()
    }
}

/// Log-gamma for complex `z` (any branch consistent under `exp`).
pub fn lgamma(z: Complex64) -> Result<Complex64> {
    pole_check(z)?;
    if z.re >= 0.5 {
        Ok(lgamma_right(z))
    } else {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lgamma_right(1.0 - z))
    }
}

/// Euler gamma function for complex `z`.
///
/// Relative error stays below ~1e-13 for `|z| <= 50`, `|Im z| <= 50`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(lgamma(z)?.exp())
}

// B_{2k}/(2k) for the digamma asymptotic series, k = 1..=7.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// `pi * cot(pi z)` without overflow for large `|Im z|`.
fn pi_cot_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if z.im > 0.5 {
        // cot w = i (e^{2iw} + 1) / (e^{2iw} - 1)
        let q = (Complex64::i() * 2.0 * w).exp();
        Complex64::i() * (q + 1.0) / (q - 1.0) * PI
    } else if z.im < -0.5 {
        pi_cot_pi(z.conj()).conj()
    } else {
        w.cos() / w.sin() * PI
    }
}

/// Digamma `psi(z) = Gamma'(z)/Gamma(z)` for complex `z`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    pole_check(z)?;
    if z.re < 0.5 {
        // psi(z) = psi(1-z) - pi cot(pi z)
        return Ok(digamma(1.0 - z)? - pi_cot_pi(z));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = z;
    // Recurrence psi(w+1) = psi(w) + 1/w until the asymptotic series applies.
    while w.norm() < 15.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut series = Complex64::new(0.0, 0.0);
    let mut pw = inv2;
    for &c in &DIGAMMA_ASYMP {
        series += c * pw;
        pw *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - series)
}
