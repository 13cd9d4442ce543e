//! Arithmetic dynamics of the unicritical family `f_t(z) = z^d + t`.
//!
//! The crate computes, with certified error where the underlying mathematics
//! permits it, the local and global quantities attached to marked points
//! `a, b` of the family:
//!
//! - iterate polynomials `f_T^n(a)` over the exact rationals and the bounded
//!   search for parameters where two marked points are simultaneously
//!   preperiodic ([`exact`]);
//! - escape-rate (Green's) functions of generalized Mandelbrot sets at the
//!   archimedean place, with enclosure intervals, polynomial root finding,
//!   and disk-cover verification ([`arch`]);
//! - exact p-adic Green's functions, Newton polygons, and the local pairing
//!   case analysis, all on integer/rational exponents ([`nonarch`]);
//! - logarithmic Weil heights, the product formula, and the adelic assembly
//!   of the Arakelov-Zhang pairing ([`adelic`]);
//! - machine checks of the explicit height inequalities relating the pairing
//!   to `h(a,b)` and `h(a^d - b^d)`, and the conditional uniform bound
//!   formula ([`harness`]).
//!
//! Conventions: all Green's function values are in natural-log units.
//! Quantities derived from p-adic valuations are kept as exact rational
//! exponents for as long as possible and only converted to floating point at
//! the reporting edge, always with outward rounding.


pub mod adelic;
pub mod arch;
pub mod config;
pub mod error;
pub mod exact;

pub mod harness;
pub mod nonarch;
pub mod num;

pub use config::RunConfig;
pub use error::Error;
pub use num::interval::GreenValue;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
