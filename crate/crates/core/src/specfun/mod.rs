//! Special functions with complex parameters, built from first principles:
//! gamma/digamma, Bessel `J` of complex order and its order-derivative,
//! modified Bessel `I`, the Macdonald function of imaginary order, and the
//! modified Struve function `L_1` at purely imaginary argument.
//!
//! All routines are pure functions of their arguments and safe for
//! unrestricted concurrent use.

mod bessel;
mod gamma;
mod macdonald;
mod struve;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_j, bessel_j_dnu, SeriesConfig};
pub use gamma::{digamma, gamma, lgamma, EULER_GAMMA};
pub use macdonald::{macdonald_k, macdonald_k_scaled};
pub use struve::struve_l1_imag;
