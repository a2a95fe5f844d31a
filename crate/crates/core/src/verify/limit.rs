use std::ops::RangeInclusive;

use rayon::prelude::*;
use rug::Rational;

use crate::catalog::{closed_form_split, evaluate_lhs, lookup, ClassicalTarget, IdentityRecord};
use crate::error::{QError, Result};
use crate::kernel::{pi_q, sin_q, QBase};
use crate::numeric::{BigReal, PrecisionContext};

/// What a limit study evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitSubject {
    /// A record with a classical target. The studied quantity is
    /// c·LHS(q)/P(q), where the closed form is P(q)·π_q^e and c is the
    /// target with π^e removed; it tends to the target iff the series side
    /// behaves as the closed form predicts while π_q → π.
    Record(Box<IdentityRecord>),
    /// π_q → π.
    PiQ,
    /// sin_q(π/3) → √3/2.
    SinQ,
}

impl LimitSubject {
    /// Resolves `PI_Q`, `SIN_Q` or a record id.
    pub fn resolve(id: &str, records: &[IdentityRecord]) -> Option<Self> {
        match id {
            "PI_Q" => Some(LimitSubject::PiQ),
            "SIN_Q" => Some(LimitSubject::SinQ),
            _ => lookup(records, id).cloned().map(|r| LimitSubject::Record(Box::new(r))),
        }
    }

    pub fn id(&self) -> &str {
        match self {
            LimitSubject::Record(r) => &r.id,
            LimitSubject::PiQ => "PI_Q",
            LimitSubject::SinQ => "SIN_Q",
        }
    }

    pub fn target(&self) -> Result<ClassicalTarget> {
        match self {
            LimitSubject::Record(r) => r
                .limit_target
                .clone()
                .ok_or_else(|| QError::InvalidParams(format!("record {} has no limit target", r.id))),
            LimitSubject::PiQ => Ok(ClassicalTarget::new(Rational::from(1), false, 1, "lim pi_q = pi")),
            LimitSubject::SinQ => Ok(ClassicalTarget::new(
                Rational::from((1, 2)),
                true,
                0,
                "lim sin_q(pi/3) = sqrt3/2",
            )),
        }
    }

    fn value(&self, target: &ClassicalTarget, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
        match self {
            LimitSubject::PiQ => pi_q(q, ctx),
            LimitSubject::SinQ => sin_q(&BigReal::ratio(1, 3, ctx.working_prec()), q, ctx),
            LimitSubject::Record(r) => {
                let (p, e) = closed_form_split(r, q, ctx).ok_or_else(|| {
                    QError::InvalidParams(format!("record {} has no closed form in powers of pi_q", r.id))
                })??;
                if e != target.pi_power {
                    return Err(QError::InvalidParams(format!(
                        "record {} closes with pi_q^{} but its target has pi^{}",
                        r.id, e, target.pi_power
                    )));
                }
                let lhs = evaluate_lhs(r, q, ctx)?;
                Ok(lhs.value * target.coefficient_value(ctx.working_prec()) / p)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitPoint {
    pub k: u32,
    pub q: BigReal,
    pub value: Option<BigReal>,
    /// |value − target|
    pub error: Option<BigReal>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitStudy {
    pub identity_id: String,
    pub target: BigReal,
    pub target_expression: String,
    /// Relative error the evaluation itself cannot resolve; errors at or
    /// below it count as converged.
    pub resolution: BigReal,
    pub points: Vec<LimitPoint>,
}

impl LimitStudy {
    /// e_k/|target|, None where the evaluation failed.
    pub fn relative_errors(&self) -> Vec<Option<BigReal>> {
        let t = self.target.abs();
        self.points.iter().map(|p| p.error.as_ref().map(|e| e / &t)).collect()
    }

    /// Strictly decreasing errors, allowing one rise at the first step
    /// only, and a final relative error below 10⁻². A step between two
    /// errors already at the resolution floor counts as decreasing.
    pub fn verdict(&self) -> bool {
        let rel = self.relative_errors();
        if rel.is_empty() || rel.iter().any(Option::is_none) {
            return false;
        }
        let rel: Vec<BigReal> = rel.into_iter().flatten().collect();
        let floor = &self.resolution;
        let decreasing = rel
            .windows(2)
            .enumerate()
            .all(|(i, w)| i == 0 || w[1] < w[0] || (&w[0] <= floor && &w[1] <= floor));
        let last = rel.last().expect("non-empty");
        decreasing && last.to_f64() < 1e-2
    }
}

/// Context for studies near q = 1: at least 512 bits and 10⁶ terms.
pub fn limit_ctx(ctx: &PrecisionContext) -> PrecisionContext {
    let bits = ctx.precision_bits().max(512);
    let terms = ctx.max_terms().max(1_000_000);
    ctx.with_precision_bits(bits)
        .and_then(|c| c.with_max_terms(terms))
        .expect("enlarging a valid context keeps it valid")
}

/// Evaluates the subject at q_k = 1 − 2^{−k} for every k in `k_range`.
pub fn limit_study(subject: &LimitSubject, k_range: RangeInclusive<u32>, ctx: &PrecisionContext) -> Result<LimitStudy> {
    let target_expr = subject.target()?;
    if *k_range.start() == 0 || k_range.is_empty() {
        return Err(QError::InvalidParams(format!(
            "k range {}..{} must be non-empty and start at 1 or more",
            k_range.start(),
            k_range.end()
        )));
    }
    let ctx = limit_ctx(ctx);
    if *k_range.end() >= ctx.precision_bits() {
        return Err(QError::InvalidParams(format!(
            "k = {} does not fit {} bits",
            k_range.end(),
            ctx.precision_bits()
        )));
    }
    let prec = ctx.working_prec();
    let target = target_expr.value(prec);
    let ks: Vec<u32> = k_range.collect();
    let points = ks
        .par_iter()
        .map(|&k| {
            let qv = BigReal::one(prec) - BigReal::pow2(-(k as i32), prec);
            let q = QBase::new(qv.clone()).expect("1 - 2^-k lies in (0,1)");
            match subject.value(&target_expr, &q, &ctx) {
                Ok(v) => LimitPoint {
                    k,
                    q: qv,
                    error: Some((&v - &target).abs()),
                    value: Some(v),
                    note: None,
                },
                Err(e) => LimitPoint {
                    k,
                    q: qv,
                    value: None,
                    error: None,
                    note: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(LimitStudy {
        identity_id: subject.id().to_string(),
        target,
        target_expression: target_expr.expression(),
        resolution: ctx.rel_tol_big() * 16i64,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn pi_q_study_converges() {
        let ctx = PrecisionContext::default();
        let s = limit_study(&LimitSubject::PiQ, 2..=8, &ctx).unwrap();
        assert_eq!(s.points.len(), 7);
        assert!(s.verdict(), "{:?}", s.relative_errors());
    }

    #[test]
    fn sin_q_study_converges() {
        let ctx = PrecisionContext::default();
        let s = limit_study(&LimitSubject::SinQ, 2..=8, &ctx).unwrap();
        assert!(s.verdict(), "{:?}", s.relative_errors());
    }

    #[test]
    fn record_without_target_is_rejected() {
        let cat = builtin_catalog();
        let s = LimitSubject::resolve("T31_MAIN", &cat).unwrap();
        let ctx = PrecisionContext::default();
        assert!(matches!(limit_study(&s, 2..=3, &ctx), Err(QError::InvalidParams(_))));
        assert!(LimitSubject::resolve("NOPE", &cat).is_none());
    }

    #[test]
    fn verdict_tolerates_only_the_first_rise() {
        let mk = |errs: &[f64]| LimitStudy {
            identity_id: "X".into(),
            target: BigReal::one(64),
            target_expression: "1".into(),
            resolution: BigReal::from_f64(1e-30, 64),
            points: errs
                .iter()
                .enumerate()
                .map(|(i, e)| LimitPoint {
                    k: i as u32 + 2,
                    q: BigReal::zero(64),
                    value: None,
                    error: Some(BigReal::from_f64(*e, 64)),
                    note: None,
                })
                .collect(),
        };
        assert!(mk(&[0.1, 0.2, 0.05, 0.005]).verdict());
        assert!(!mk(&[0.1, 0.05, 0.06, 0.005]).verdict());
        assert!(!mk(&[0.1, 0.05, 0.02]).verdict());
        assert!(mk(&[1e-3, 1e-31, 1e-33, 1e-32]).verdict());
        assert!(!mk(&[1e-3, 1e-31, 1e-29]).verdict());
    }
}
