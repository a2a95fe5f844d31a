//! Verification runs over a q-grid, classical-limit studies, and reports.

mod limit;
mod report;

use rayon::prelude::*;

use crate::catalog::{evaluate_sides, sibling_lhs, IdentityRecord};
use crate::kernel::QBase;
use crate::numeric::PrecisionContext;
use crate::outcome::{evaluation_ctx, VerificationOutcome};

pub use limit::{limit_ctx, limit_study, LimitPoint, LimitStudy, LimitSubject};
pub use report::{parse_report, render_limit_study, render_report, ReportFormat, ReportRow};

/// The default grid {0.1, 0.3, 0.5, 0.7, 0.9}.
pub fn default_grid(ctx: &PrecisionContext) -> Vec<QBase> {
    ["0.1", "0.3", "0.5", "0.7", "0.9"]
        .iter()
        .map(|s| QBase::parse(s, ctx).expect("grid point in (0,1)"))
        .collect()
}

/// Evaluates both sides of `record` at `q` and judges them. Evaluation
/// failures come back as a status, never as an error.
pub fn verify(record: &IdentityRecord, q: &QBase, ctx: &PrecisionContext) -> VerificationOutcome {
    match evaluate_sides(record, q, &evaluation_ctx(ctx)) {
        Ok((lhs, rhs)) => VerificationOutcome::judge(&record.id, q.value(), &lhs, &rhs, ctx),
        Err(e) => VerificationOutcome::from_error(&record.id, q.value(), &e),
    }
}

/// Compares a literal record's printed series with its template sibling
/// (scaled to the same normalization). None for records without a sibling.
pub fn verify_sibling(record: &IdentityRecord, q: &QBase, ctx: &PrecisionContext) -> Option<VerificationOutcome> {
    let inner = evaluation_ctx(ctx);
    let sibling = sibling_lhs(record, q, &inner)?;
    let out = sibling.and_then(|s| {
        let (lit, _) = evaluate_sides(record, q, &inner)?;
        Ok(VerificationOutcome::judge(&record.id, q.value(), &lit, &s.value, ctx))
    });
    Some(out.unwrap_or_else(|e| VerificationOutcome::from_error(&record.id, q.value(), &e)))
}

/// Every (record, q) cell, in record-major input order.
pub fn verify_grid(records: &[IdentityRecord], grid: &[QBase], ctx: &PrecisionContext) -> Vec<VerificationOutcome> {
    let cells: Vec<(&IdentityRecord, &QBase)> = records.iter().flat_map(|r| grid.iter().map(move |q| (r, q))).collect();
    cells.par_iter().map(|(r, q)| verify(r, q, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, lookup, parse_catalog};
    use crate::outcome::Status;

    #[test]
    fn sun_passes_tightly_at_half() {
        let ctx = PrecisionContext::default();
        let cat = builtin_catalog();
        let q = QBase::parse("0.5", &ctx).unwrap();
        let out = verify(lookup(&cat, "T41_SUN").unwrap(), &q, &ctx);
        assert_eq!(out.status, Status::Pass);
        assert!(out.rel_err.unwrap() <= ctx.parse("1e-30").unwrap());
    }

    #[test]
    fn corollary_passes_at_point_nine() {
        let ctx = PrecisionContext::default();
        let cat = builtin_catalog();
        let q = QBase::parse("0.9", &ctx).unwrap();
        assert!(verify(lookup(&cat, "T3_COR_L1").unwrap(), &q, &ctx).passed());
    }

    #[test]
    fn pole_record_is_skipped() {
        let ctx = PrecisionContext::default();
        let recs = parse_catalog("id=P form=T1 alpha=1 a=0 b=0 c=1").unwrap();
        let q = QBase::parse("0.5", &ctx).unwrap();
        let out = verify(&recs[0], &q, &ctx);
        assert_eq!(out.status, Status::SkippedPole);
        assert!(out.note.unwrap().contains("pole"));
    }

    #[test]
    fn grid_order_and_empty_grid() {
        let ctx = PrecisionContext::default();
        let cat: Vec<_> = builtin_catalog().into_iter().take(3).collect();
        assert!(verify_grid(&cat, &[], &ctx).is_empty());
        let grid = default_grid(&ctx);
        let out = verify_grid(&cat, &grid, &ctx);
        assert_eq!(out.len(), 15);
        for (i, o) in out.iter().enumerate() {
            assert_eq!(o.identity_id, cat[i / 5].id);
            assert_eq!(&o.q, grid[i % 5].value());
        }
    }

    #[test]
    fn near_one_is_nonconverged_not_fail() {
        let ctx = PrecisionContext::default().with_max_terms(2000).unwrap();
        let cat = builtin_catalog();
        let q = QBase::parse("0.999", &ctx).unwrap();
        let out = verify(lookup(&cat, "T41_SUN").unwrap(), &q, &ctx);
        assert_eq!(out.status, Status::NonConverged);
    }
}
