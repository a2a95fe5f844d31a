use crate::catalog::{reduced, Binding, IdentityRecord};
use crate::error::Result;
use crate::hyper::{t1_lhs, t1_rhs, t2_lhs, t2_rhs, t2s_lhs, t2s_rhs};
use crate::kernel::QBase;
use crate::numeric::{BigReal, PrecisionContext, SumResult};

fn binding_lhs(binding: &Binding, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
    match binding {
        Binding::T1(p) => t1_lhs(&p.to_params(ctx)?, q, ctx),
        Binding::T2(p) => t2_lhs(&p.to_params(ctx)?, q, ctx),
        Binding::T2S(p) => t2s_lhs(&p.to_params(ctx)?, q, ctx),
        Binding::Literal(k) => k.lhs(q, ctx),
    }
}

/// The series side alone.
pub fn evaluate_lhs(record: &IdentityRecord, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
    binding_lhs(&record.binding, q, ctx)
}

/// (series side, closed form) of a record at q.
pub fn evaluate_sides(record: &IdentityRecord, q: &QBase, ctx: &PrecisionContext) -> Result<(SumResult, BigReal)> {
    match &record.binding {
        Binding::T1(p) => {
            let p = p.to_params(ctx)?;
            Ok((t1_lhs(&p, q, ctx)?, t1_rhs(&p, q, ctx)?))
        }
        Binding::T2(p) => {
            let p = p.to_params(ctx)?;
            Ok((t2_lhs(&p, q, ctx)?, t2_rhs(&p, q, ctx)?))
        }
        Binding::T2S(p) => {
            let p = p.to_params(ctx)?;
            Ok((t2s_lhs(&p, q, ctx)?, t2s_rhs(&p, q, ctx)?))
        }
        Binding::Literal(k) => k.sides(q, ctx),
    }
}

/// For a literal record with a template sibling: the sibling's series value
/// scaled to the literal's normalization.
pub fn sibling_lhs(record: &IdentityRecord, q: &QBase, ctx: &PrecisionContext) -> Option<Result<SumResult>> {
    let Binding::Literal(key) = &record.binding else {
        return None;
    };
    let (binding, scale) = key.sibling()?;
    Some(binding_lhs(&binding, q, ctx).map(|mut s| {
        let f = scale(q, ctx);
        s.value = &s.value * &f;
        s.tail_bound = &s.tail_bound * f.abs();
        s
    }))
}

/// The closed form split as P(q)·π_q^e, when the record has one.
pub fn closed_form_split(record: &IdentityRecord, q: &QBase, ctx: &PrecisionContext) -> Option<Result<(BigReal, i32)>> {
    match &record.binding {
        Binding::Literal(k) => k.prefactor(q, ctx),
        b => reduced::prefactor(b, q, ctx),
    }
}
