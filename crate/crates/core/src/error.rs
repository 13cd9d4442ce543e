use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An iterate polynomial would exceed the configured degree cap.
    #[error("degree cap exceeded: degree {requested} > cap {cap}")]
    DegreeCapExceeded { requested: u64, cap: u64 },

    /// `a^d = b^d`, so the two marked points share every invariant of the
    /// family and the simultaneous-preperiodicity locus is infinite.
    #[error("symmetric inputs: a^{d} = b^{d}, the parameter set is infinite and the pairing vanishes")]
    SymmetricInputs { d: u32 },

    /// The orbit left the uniform bound but escape could not be certified
    /// within the iteration budget.
    #[error("undetermined after {steps} iterations - increase N_max or precision")]
    Undetermined { steps: u64 },

    /// The simultaneous root finder made no progress within its budget.
    #[error("root finder stagnated after {iterations} sweeps (residual {residual:e})")]
    RootFinderStagnated { iterations: u32, residual: f64 },

    /// A hypothesis of the proposition backing the requested computation does
    /// not hold for these inputs.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("empty grid")]
    EmptyGrid,

    /// The denominator of the conditional uniform-bound formula is not
    /// positive for the supplied epsilon.
    #[error("denominator nonpositive - decrease epsilon")]
    DegenerateDenominator,
}
