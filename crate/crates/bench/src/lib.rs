//! Fixed workloads shared by the benchmarks.

use qident_core::catalog::{builtin_catalog, IdentityRecord};
use qident_core::{PrecisionContext, QBase};

pub fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

pub fn q(text: &str) -> QBase {
    QBase::parse(text, &ctx()).expect("bench q in (0,1)")
}

pub fn record(id: &str) -> IdentityRecord {
    builtin_catalog()
        .into_iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("no built-in record {id}"))
}
