//! Non-archimedean (p-adic) computations: exact valuations, closed-form
//! Green's functions, Newton-polygon root localization, and the local
//! pairing case analysis. Everything in this tree works on exact
//! integer/rational exponents of p; no floating p-adic arithmetic exists
//! anywhere here.

pub mod green;
pub mod newton;
pub mod pairing;
pub mod valuation;

pub use green::{green_nonarch, NonarchGreen};
pub use newton::{newton_polygon, newton_root_structure, NewtonPolygon, RootStructureReport};
pub use pairing::{pairing_nonarch, CaseTag, LocalPairingCase};
pub use valuation::{vp, vp_int, PadicAbs, Val};
