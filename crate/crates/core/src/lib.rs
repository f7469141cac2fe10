//! Numerical machinery for averages of Dirichlet polynomials twisted by
//! quadratic characters over the discriminant family `{8d : 2d squarefree}`.
//!
//! The crate has three layers:
//!
//! * exact integer arithmetic and sieves ([`arith`]), shifted divisor
//!   coefficients ([`shifts`]) and the character-sum function `G_k` ([`gk`]);
//! * analytic building blocks: smooth test weights and their transforms
//!   ([`weights`]), zeta and gamma evaluators ([`zeta`], [`special`]),
//!   square-supported Dirichlet series with Euler-product continuation
//!   ([`bseries`]) and contour condensation of permutation sums ([`contour`]);
//! * the two sides of the main comparison: brute-force empirical averages
//!   ([`empirical`]) and the 0/1-swap recipe prediction ([`recipe`]), plus
//!   replays of every intermediate identity ([`replay`], [`series`]).
//!
//! Floating-point work is done in `f64` (the tolerances baked into the check
//! suites are `f64`-specific); the truncated-series layer is generic over its
//! coefficient ring so identities can also be checked in exact rational
//! arithmetic. Concrete aliases live at the crate root.

pub mod arith;
pub mod bseries;
pub mod contour;
pub mod defaults;
pub mod empirical;
pub mod error;
pub mod gk;
pub mod quad;
pub mod recipe;
pub mod replay;
pub mod series;
pub mod shifts;
pub mod special;
pub mod util;
pub mod weights;
pub mod zeta;

/// Complex double, the workhorse scalar of the analytic layer.
pub type C64 = num_complex::Complex<f64>;

/// Truncated Laurent series with complex-double coefficients.
pub type SeriesC64 = series::FormalSeries<C64>;

/// Truncated Laurent series over the exact ring `Q(sqrt(p))`.
pub type SeriesExact<const P: u32> = series::FormalSeries<series::QuadExt<P>>;

pub use error::{Error, Result};
pub use shifts::ShiftSet;
