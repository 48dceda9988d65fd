//! Functions on the positive half-line or the real line, given either as an
//! analytic callable or as grid samples with tail-decay metadata.
//!
//! Sampled inputs are evaluated by monotone (Fritsch–Carlson) cubic
//! interpolation inside the grid and extrapolated by the declared decay tag
//! outside it; transforms need that tail information to truncate their
//! integrals honestly.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Where the function lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionDomain {
    /// `x > 0` (the transform side).
    HalfLine,
    /// All real arguments (the index side).
    RealLine,
}

/// Tail behaviour, used for extrapolation and integral truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayTag {
    /// `|f(x)| ~ e^{-a sqrt(x)}`.
    ExpSqrt(f64),
    /// `|f(x)| ~ e^{-a |x|}`.
    Exp(f64),
    /// `|f(x)| ~ |x|^{-a}`.
    Power(f64),
    /// `|f(tau)| ~ sech(pi tau)`.
    SechPi,
}

impl DecayTag {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DecayTag::ExpSqrt(a) | DecayTag::Exp(a) | DecayTag::Power(a) => a > 0.0,
            DecayTag::SechPi => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Schema("decay parameter a must be > 0".into()))
        }
    }

    /// `f(x)/f(x0)` predicted by the tag for `|x| >= |x0|`.
    fn ratio(&self, x: f64, x0: f64) -> f64 {
        let (x, x0) = (x.abs(), x0.abs());
        match *self {
            DecayTag::ExpSqrt(a) => (-a * (x.sqrt() - x0.sqrt())).exp(),
            DecayTag::Exp(a) => (-a * (x - x0)).exp(),
            DecayTag::Power(a) => {
                if x0 == 0.0 {
                    0.0
                } else {
                    (x / x0).powf(-a)
                }
            }
            DecayTag::SechPi => {
                let pi = std::f64::consts::PI;
                // cosh(pi x0)/cosh(pi x), written to avoid overflow
                ((pi * (x0 - x)).exp()) * (1.0 + (-2.0 * pi * x0).exp())
                    / (1.0 + (-2.0 * pi * x).exp())
            }
        }
    }
}

impl fmt::Display for DecayTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecayTag::ExpSqrt(a) => write!(f, "exp_sqrt({a})"),
            DecayTag::Exp(a) => write!(f, "exp({a})"),
            DecayTag::Power(a) => write!(f, "power({a})"),
            DecayTag::SechPi => write!(f, "sech_pi"),
        }
    }
}

type Callable = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

enum Source {
    Callable(Callable),
    Grid {
        grid: Vec<f64>,
        values: Vec<f64>,
        slopes: Vec<f64>,
    },
}

impl Clone for Source {
    fn clone(&self) -> Self {
        match self {
            Source::Callable(f) => Source::Callable(Arc::clone(f)),
            Source::Grid {
                grid,
                values,
                slopes,
            } => Source::Grid {
                grid: grid.clone(),
                values: values.clone(),
                slopes: slopes.clone(),
            },
        }
    }
}

/// A real-valued function with domain and tail metadata.
#[derive(Clone)]
pub struct SampledFunction {
    source: Source,
    pub domain: FunctionDomain,
    pub decay: DecayTag,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.source {
            Source::Callable(_) => "callable".to_string(),
            Source::Grid { grid, .. } => format!("grid[{}]", grid.len()),
        };
        write!(
            f,
            "SampledFunction({kind}, {:?}, {})",
            self.domain, self.decay
        )
    }
}

impl SampledFunction {
    /// Wrap an analytic callable.
    pub fn from_fn<F>(f: F, domain: FunctionDomain, decay: DecayTag) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        decay.validate()?;
        Ok(Self {
            source: Source::Callable(Arc::new(f)),
            domain,
            decay,
        })
    }

    /// Build from grid samples; the grid must be strictly increasing and all
    /// values finite.
    pub fn from_samples(
        grid: Vec<f64>,
        values: Vec<f64>,
        domain: FunctionDomain,
        decay: DecayTag,
    ) -> Result<Self> {
        decay.validate()?;
        if grid.len() != values.len() {
            return Err(Error::Schema(format!(
                "grid has {} points but values has {}",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 2 {
            return Err(Error::Schema("need at least two samples".into()));
        }
        for w in grid.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Schema(format!(
                    "grid not strictly increasing at {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        if grid.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Schema("non-finite grid point or value".into()));
        }
        if domain == FunctionDomain::HalfLine && grid[0] < 0.0 {
            return Err(Error::Schema("half-line grid contains negative points".into()));
        }
        let slopes = pchip_slopes(&grid, &values);
        Ok(Self {
            source: Source::Grid {
                grid,
                values,
                slopes,
            },
            domain,
            decay,
        })
    }

    /// Evaluate at `x` (interpolating or tail-extrapolating as needed).
    pub fn eval(&self, x: f64) -> f64 {
        match &self.source {
            Source::Callable(f) => f(x),
            Source::Grid {
                grid,
                values,
                slopes,
            } => {
                let n = grid.len();
                if x >= grid[0] && x <= grid[n - 1] {
                    return pchip_eval(grid, values, slopes, x);
                }
                if x > grid[n - 1] {
                    return values[n - 1] * self.decay.ratio(x, grid[n - 1]);
                }
                // left of the grid
                match self.domain {
                    FunctionDomain::HalfLine => values[0],
                    FunctionDomain::RealLine => {
                        if x.abs() > grid[0].abs() {
                            values[0] * self.decay.ratio(x, grid[0])
                        } else {
                            values[0]
                        }
                    }
                }
            }
        }
    }

    /// Mellin convergence strip `(lo, hi)` implied by the metadata
    /// (half-line functions bounded near zero, tail per decay tag).
    pub fn mellin_strip(&self) -> (f64, f64) {
        let hi = match self.decay {
            DecayTag::Power(a) => a,
            _ => f64::INFINITY,
        };
        (0.0, hi)
    }
}

/// Fritsch–Carlson monotone cubic slopes.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    let mut m = vec![0.0; n];
    if n == 2 {
        m[0] = delta[0];
        m[1] = delta[0];
        return m;
    }
    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] <= 0.0 {
            m[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    m[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    m
}

fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

fn pchip_eval(x: &[f64], y: &[f64], m: &[f64], xq: f64) -> f64 {
    let i = match x.binary_search_by(|p| p.partial_cmp(&xq).unwrap()) {
        Ok(i) => return y[i],
        Err(i) => i.saturating_sub(1).min(x.len() - 2),
    };
    let h = x[i + 1] - x[i];
    let t = (xq - x[i]) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1]
}
