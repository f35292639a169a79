//! The verification engine: lowering of claims into factored form and the
//! two independent strategies (denominator clearing and point evaluation)
//! over an integer working ring.

pub mod clearing;
pub mod lower;
pub mod pointeval;
pub mod workring;

pub use clearing::{verify_clearing, EngineVerdict};
pub use lower::{lower_claim, EngineError, LoweredClaim};
pub use pointeval::verify_pointeval;
