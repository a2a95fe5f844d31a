//! Arbitrary-precision evaluation of q-gamma based summation identities and
//! the verification harness around them.

pub mod catalog;
pub mod error;
pub mod hyper;
pub mod kernel;
pub mod numeric;
pub mod outcome;
pub mod verify;

pub use error::{QError, Result};
pub use kernel::{Estimate, QBase};
pub use numeric::{BigReal, PrecisionContext, SumResult};
pub use outcome::{Status, VerificationOutcome};
