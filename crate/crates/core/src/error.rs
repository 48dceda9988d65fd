use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Gamma/digamma evaluated at a non-positive integer.
    #[error("pole at non-positive integer argument ({re}, {im})")]
    Pole { re: f64, im: f64 },

    /// A series did not reach the requested tolerance within `max_terms`.
    #[error("series did not converge within {max_terms} terms (last relative term {last_rel:.3e})")]
    Convergence { max_terms: usize, last_rel: f64 },

    /// Adaptive quadrature could not meet the tolerance at maximum depth.
    #[error("quadrature tolerance not met: estimate {estimate:.3e} > allowed {allowed:.3e}")]
    Quadrature { estimate: f64, allowed: f64 },

    /// An argument was outside the routine's domain, or a non-finite value
    /// appeared where the contract promises finite output.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Mellin abscissa lies outside the declared convergence strip.
    #[error("Re s = {re_s} outside declared strip ({lo}, {hi})")]
    Strip { re_s: f64, lo: f64, hi: f64 },

    /// A contour abscissa violates the analyticity constraints of the kernel.
    #[error("contour abscissa {abscissa} outside required interval ({lo}, {hi})")]
    Contour { abscissa: f64, lo: f64, hi: f64 },

    /// The integrand at the contour truncation height is not negligible.
    #[error("contour truncated while integrand still {ratio:.3e} of peak at height {height}")]
    Truncation { ratio: f64, height: f64 },

    /// A weighted norm required by a transform diverged numerically.
    #[error("weighted norm diverges numerically: {0}")]
    Norm(String),

    /// An integrability precondition of an inversion formula failed.
    #[error("integrability condition failed: {0}")]
    Integrability(String),

    /// A sampled-function description violated its schema.
    #[error("schema error: {0}")]
    Schema(String),
}
