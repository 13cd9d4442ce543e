//! Archimedean (complex-place) numerics: root finding, certified escape-rate
//! functions, Mandelbrot-set membership, disk-cover verification, and the
//! equidistribution estimator for the local pairing integral.

pub mod cover;
pub mod dynroots;
pub mod green;
pub mod pairing;
pub mod roots;

pub use green::{green_arch, green_escape_f64, member_m_a, Membership};
pub use dynroots::{iterate_roots, IterateTarget};
pub use roots::{roots, roots_of_unity, PolishedRoot};
