//! Laboratory for mixed moments of the divisor-problem error term and the
//! Riemann zeta function on the critical line.
//!
//! * [`divisor`]: sieved `d(n)`, `r(n)` and the error terms Δ, Δ*, P.
//! * [`zeta`]: ζ(½ + it) by Euler–Maclaurin (reference) and Riemann–Siegel
//!   (fast), critical-line sampling and the mean-square error term E(T).
//! * [`bounds`]: exact-rational Hölder chaining of moment facts into upper
//!   bounds for `∫ Δᵏ |ζ|^{2m}`.
//! * [`moments`]: numerical mixed moments, growth-exponent fits and
//!   comparison against [`bounds`].

pub mod bounds;
pub mod constants;
mod dd;
pub mod divisor;
pub mod error;
pub mod moments;
pub mod quadrature;
pub mod summation;
pub mod zeta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/divisor.md")]
    mod divisor {}
    #[doc = include_str!("../../../book/src/zeta.md")]
    mod zeta {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/moments.md")]
    mod moments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
