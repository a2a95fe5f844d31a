use std::fmt;
use std::str::FromStr;

use crate::error::QError;
use crate::numeric::{BigReal, PrecisionContext, SumResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    SkippedPole,
    NonConverged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedPole => "SKIPPED_POLE",
            Status::NonConverged => "NONCONVERGED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "PASS" => Ok(Status::Pass),
            "FAIL" => Ok(Status::Fail),
            "SKIPPED_POLE" => Ok(Status::SkippedPole),
            "NONCONVERGED" => Ok(Status::NonConverged),
            other => Err(format!("unknown status '{other}'")),
        }
    }
}

/// Result of checking one identity at one q.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationOutcome {
    pub identity_id: String,
    pub q: BigReal,
    pub lhs: Option<BigReal>,
    pub rhs: Option<BigReal>,
    pub abs_err: Option<BigReal>,
    pub rel_err: Option<BigReal>,
    pub terms_used: u64,
    /// Tail bound of the summed side.
    pub tail_bound: Option<BigReal>,
    pub status: Status,
    /// Diagnostic for non-PASS/FAIL outcomes.
    pub note: Option<String>,
}

impl VerificationOutcome {
    /// Compares a summed side with a closed form.
    ///
    /// rel_err = |lhs − rhs| / max(|rhs|, 2^−precision_bits); PASS iff
    /// rel_err ≤ rel_tol and the sum converged.
    pub fn judge(id: &str, q: &BigReal, lhs: &SumResult, rhs: &BigReal, ctx: &PrecisionContext) -> Self {
        let abs_err = (&lhs.value - rhs).abs();
        let denom = rhs.abs().max(ctx.error_floor());
        let rel_err = &abs_err / &denom;
        let status = if !lhs.converged {
            Status::NonConverged
        } else if rel_err <= ctx.rel_tol_big() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationOutcome {
            identity_id: id.to_string(),
            q: q.clone(),
            lhs: Some(lhs.value.clone()),
            rhs: Some(rhs.clone()),
            abs_err: Some(abs_err),
            rel_err: Some(rel_err),
            terms_used: lhs.terms_used,
            tail_bound: Some(lhs.tail_bound.clone()),
            status,
            note: None,
        }
    }

    /// Encodes an evaluation failure as a status.
    pub fn from_error(id: &str, q: &BigReal, err: &QError) -> Self {
        let (status, terms, lhs, tail) = match err {
            QError::NonConvergence { partial } => (
                Status::NonConverged,
                partial.terms_used,
                Some(partial.value.clone()),
                Some(partial.tail_bound.clone()),
            ),
            QError::Pole(_) | QError::Domain(_) => (Status::SkippedPole, 0, None, None),
            _ => (Status::Fail, 0, None, None),
        };
        VerificationOutcome {
            identity_id: id.to_string(),
            q: q.clone(),
            lhs,
            rhs: None,
            abs_err: None,
            rel_err: None,
            terms_used: terms,
            tail_bound: tail,
            status,
            note: Some(err.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Context used to evaluate each side: sides compose up to 16 truncated
/// products, so they are computed well inside the tolerance they are judged
/// against.
pub fn evaluation_ctx(ctx: &PrecisionContext) -> PrecisionContext {
    ctx.tightened(1024.0)
}
