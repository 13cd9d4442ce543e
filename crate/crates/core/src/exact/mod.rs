//! Exact arbitrary-precision arithmetic: rationals, dense polynomials over Q,
//! iterate polynomials of the unicritical family, factorization over Q, and
//! the bounded search for simultaneously preperiodic parameters.

pub mod factor;
pub mod iterate;
pub mod poly;
pub mod rational;
pub mod sab;

pub use iterate::{iterate_poly, preperiodic_poly};
pub use poly::DensePoly;
pub use rational::Rational;
pub use sab::{find_common_preperiodic, orbit_status, OrbitStatus, PreperiodicParameterSet};
