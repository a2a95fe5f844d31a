//! Arbitrary-precision scalar, precision context, and the tail-bounded
//! product and sum primitives every other module builds on.

mod big;
mod context;
mod series;

pub use big::{format_exact, parse_exact, BigReal};
pub use context::PrecisionContext;
pub use series::{sum_from, tail_bounded_product, tail_bounded_sum, SumResult};
