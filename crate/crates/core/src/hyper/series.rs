use std::cell::RefCell;

use crate::error::{QError, Result};
use crate::numeric::{sum_from, BigReal, PrecisionContext, SumResult};

/// A series whose consecutive terms are related by a rational function of
/// x_n = base^n:
///
/// ```text
/// core(0)   = lead
/// core(n+1) = core(n) · z · ∏_i (1 − A_i x_n)/(1 − B_i x_n)
/// term(n)   = core(n) · (1 − W x_n²)          (when a quadratic factor is set)
/// ```
///
/// Both basic hypergeometric series and the q-gamma templates reduce to
/// this shape, with the quadratic factor carrying very-well-poised terms.
#[derive(Debug, Clone)]
pub struct QRatioSeries {
    base: BigReal,
    lead: BigReal,
    argument: BigReal,
    pairs: Vec<(BigReal, BigReal)>,
    quadratic: Option<BigReal>,
}

struct Step {
    core: BigReal,
    x: BigReal,
    bound: BigReal,
}

impl QRatioSeries {
    pub fn new(base: BigReal, lead: BigReal, argument: BigReal, pairs: Vec<(BigReal, BigReal)>) -> Self {
        QRatioSeries {
            base,
            lead,
            argument,
            pairs,
            quadratic: None,
        }
    }

    /// Multiplies every term by (1 − W x_n²).
    pub fn with_quadratic(mut self, w: BigReal) -> Self {
        self.quadratic = Some(w);
        self
    }

    pub fn lead(&self) -> &BigReal {
        &self.lead
    }

    fn quadratic_factor(&self, x: &BigReal) -> BigReal {
        match &self.quadratic {
            Some(w) => BigReal::one(x.prec()) - w * x.square(),
            None => BigReal::one(x.prec()),
        }
    }

    /// Advances `core` from n to n+1 and returns a bound on |term(m+1)/term(m)|
    /// valid for all m ≥ n (≥ 1 when none is available yet).
    fn advance(&self, step: &mut Step) -> Result<()> {
        let prec = step.x.prec();
        let one = BigReal::one(prec);
        let infinite = BigReal::from_f64(f64::INFINITY, prec);
        let mut bound = self.argument.abs();
        let mut bounded = true;
        let mut factor = self.argument.clone();
        for (a, b) in &self.pairs {
            let den = &one - b * &step.x;
            if den.is_zero() {
                return Err(QError::domain(format!(
                    "vanishing term denominator 1 - {} x_n at x_n = {}",
                    b, step.x
                )));
            }
            let f = (&one - a * &step.x) / &den;
            // f is monotone towards 1 along x_m, m ≥ n, once 1 − B x_n > 0
            if den.is_positive() {
                let af = f.abs();
                if af > 1 {
                    bound *= &af;
                }
            } else {
                bounded = false;
            }
            factor *= &f;
        }
        if let Some(w) = &self.quadratic {
            let x2 = step.x.square();
            let here = &one - w * &x2;
            let next = &one - w * &x2 * self.base.square();
            if here.is_positive() {
                let g = (&next / &here).abs();
                if g > 1 {
                    bound *= &g;
                }
            } else {
                bounded = false;
            }
        }
        step.core *= &factor;
        step.x *= &self.base;
        step.bound = if bounded { bound } else { infinite };
        Ok(())
    }

    /// The first `count` terms, by recurrence.
    pub fn terms(&self, count: usize) -> Result<Vec<BigReal>> {
        let prec = self.lead.prec().max(self.base.prec());
        let mut step = Step {
            core: self.lead.clone(),
            x: BigReal::one(prec),
            bound: BigReal::zero(prec),
        };
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(&step.core * self.quadratic_factor(&step.x));
            self.advance(&mut step)?;
        }
        Ok(out)
    }

    pub fn sum(&self, ctx: &PrecisionContext) -> Result<SumResult> {
        self.sum_with_head(BigReal::zero(ctx.working_prec()), ctx)
    }

    /// Sum with a fixed head already added to the partial sum.
    pub fn sum_with_head(&self, head: BigReal, ctx: &PrecisionContext) -> Result<SumResult> {
        let prec = ctx.working_prec();
        let state = RefCell::new(Step {
            core: self.lead.clone(),
            x: BigReal::one(prec),
            bound: BigReal::from_f64(f64::INFINITY, prec),
        });
        sum_from(
            head,
            |_| {
                let mut step = state.borrow_mut();
                let term = &step.core * self.quadratic_factor(&step.x);
                self.advance(&mut step)?;
                Ok(term)
            },
            |_| state.borrow().bound.clone(),
            ctx,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_is_a_ratio_series() {
        let ctx = PrecisionContext::default();
        for r in ["0.1", "0.5", "0.9"] {
            let z = ctx.parse(r).unwrap();
            let s = QRatioSeries::new(ctx.ratio(1, 2), ctx.big(1), z.clone(), vec![]);
            let got = s.sum(&ctx).unwrap();
            let expected = (ctx.big(1) - &z).recip();
            assert!((got.value - &expected).abs() <= ctx.rel_tol_big() * expected);
        }
    }

    #[test]
    fn zero_lead_sums_to_zero() {
        let ctx = PrecisionContext::default();
        let s = QRatioSeries::new(ctx.ratio(1, 2), ctx.big(0), ctx.ratio(1, 2), vec![]);
        let got = s.sum(&ctx).unwrap();
        assert!(got.value.is_zero());
        assert!(got.converged);
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let ctx = PrecisionContext::default();
        // 1 − 2·x_1 = 0 with base 1/2
        let s = QRatioSeries::new(
            ctx.ratio(1, 2),
            ctx.big(1),
            ctx.ratio(1, 2),
            vec![(ctx.big(0), ctx.big(2))],
        );
        assert!(matches!(s.terms(4), Err(QError::Domain(_))));
    }
}
