//! Numerical machinery for the index-transform pair whose kernel is the real
//! part of a squared Bessel function of purely imaginary order,
//!
//! ```text
//! Phi_tau(x) = sqrt(pi) / cosh(pi tau) * Re[ J_{i tau}(sqrt x)^2 ],
//!
//! (F f)(tau) = integral_0^inf  Phi_tau(x) f(x) dx,
//! (G g)(x)   = integral_-inf^inf  Phi_tau(x) g(tau) dtau,
//! ```
//!
//! together with everything needed to evaluate, cross-check and invert them:
//!
//! * [`specfun`] — gamma/digamma for complex arguments, Bessel `J` of complex
//!   order and its order-derivative, modified Bessel `I`, the Macdonald
//!   function of imaginary order, and the modified Struve function `L1` at
//!   purely imaginary argument.
//! * [`quad`] — adaptive Gauss–Kronrod quadrature on semi-infinite and real
//!   domains, vertical-line contour integration, finite-difference stencils.
//! * [`sampled`] — functions given as grid samples plus tail-decay metadata.
//! * [`mellin`] — numerical Mellin transform, inversion, Parseval residuals
//!   and the gamma-product/Fourier-cosine reciprocal pair.
//! * [`kernel`] — the kernel `Phi_tau(x)` by three independent routes and the
//!   third-order ODE it satisfies.
//! * [`transform`] — the forward and inverse-direction transforms, their
//!   inversion formulas, and the auxiliary kernels they require.
//! * [`pde`] — the spectral solution of the third-order wedge PDE driven by
//!   the same kernel, with residual and initial-condition checks.
//! * [`catalog`] — built-in test functions used by the verification suites.

pub mod catalog;
mod error;
pub mod kernel;
pub mod mellin;
pub mod pde;
pub mod quad;
pub mod sampled;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// sqrt(pi), the constant in front of both transforms.
pub const SQRT_PI: f64 = 1.7724538509055160273;
