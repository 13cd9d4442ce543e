//! High-precision floating point support: conversions between exact
//! rationals and `astro_float` big floats, outward-rounded real intervals,
//! and complex points/rectangles built on them.

pub mod cplx;
pub mod interval;
pub mod real;

pub use cplx::{CBox, CPoint};
pub use interval::{GreenValue, RInterval};
pub use real::RealCtx;
