use serde::{Deserialize, Serialize};

/// Numeric policy shared by the escape-rate, root-finding, and pairing code.
///
/// All fields must be positive. `precision_bits` is the working significand
/// size; routines that fail to certify a result escalate it by doubling up to
/// `max_precision_bits` before giving up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Working significand precision in bits.
    pub precision_bits: usize,
    /// Precision ceiling for automatic escalation.
    pub max_precision_bits: usize,
    /// Orbit iteration budget for escape/boundedness certificates.
    pub n_max: u64,
    /// Cap on the degree of any constructed iterate polynomial.
    pub degree_cap: u64,
    /// Target width for certified Green's function enclosures (natural log).
    pub tol: f64,
    /// Equidistribution depth for the archimedean pairing estimator.
    pub n_arch: u32,
    /// Seed for the deterministic perturbations used by the root finder and
    /// the randomized property sweeps.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 128,
            max_precision_bits: 1024,
            n_max: 4096,
            degree_cap: 4096,
            tol: 1e-9,
            n_arch: 6,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Config with a given working precision, other fields default.
    pub fn with_precision(bits: usize) -> Self {
        RunConfig {
            precision_bits: bits,
            max_precision_bits: bits.max(1024),
            ..Self::default()
        }
    }
}
