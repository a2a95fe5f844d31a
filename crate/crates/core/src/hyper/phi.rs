use crate::error::{QError, Result};
use crate::hyper::QRatioSeries;
use crate::kernel::{poch_infinite, QBase};
use crate::numeric::{BigReal, PrecisionContext, SumResult};
use crate::outcome::{evaluation_ctx, VerificationOutcome};

/// Parameters of Σ (a₁,…,a_r;q)_n / (q,b₁,…,b_s;q)_n · zⁿ.
///
/// `well_poised = Some(a)` multiplies the n-th term by (1 − a q^{2n})/(1 − a),
/// which is what the parameter pair ±q a^{1/2} over ±a^{1/2} contributes.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeriesSpec {
    pub numerator_params: Vec<BigReal>,
    pub denominator_params: Vec<BigReal>,
    pub base: QBase,
    pub argument: BigReal,
    pub well_poised: Option<BigReal>,
}

impl PhiSeriesSpec {
    pub fn new(
        numerator_params: Vec<BigReal>,
        denominator_params: Vec<BigReal>,
        base: QBase,
        argument: BigReal,
    ) -> Self {
        PhiSeriesSpec {
            numerator_params,
            denominator_params,
            base,
            argument,
            well_poised: None,
        }
    }

    pub fn with_well_poised(mut self, a: BigReal) -> Self {
        self.well_poised = Some(a);
        self
    }

    fn check(&self, ctx: &PrecisionContext) -> Result<()> {
        if self.argument.abs() >= 1 {
            return Err(QError::domain(format!("|z| = {} is not below 1", self.argument.abs())));
        }
        let q = self.base.value();
        let log_q = q.ln()?;
        for b in &self.denominator_params {
            // 1 − b qⁿ = 0 only for b = q^{−m}, m ≥ 0
            if !b.is_positive() || *b < 1 {
                continue;
            }
            let m = b.ln()? / -&log_q;
            if let Some((k, dist)) = m.integer_distance() {
                if k >= 0 && dist < ctx.pole_threshold() {
                    return Err(QError::domain(format!(
                        "denominator parameter {} equals q^-{} and makes a term denominator vanish",
                        b, k
                    )));
                }
            }
        }
        if let Some(a) = &self.well_poised {
            if (a - 1i64).abs() < ctx.pole_threshold() {
                return Err(QError::domain("well-poised parameter a = 1 makes 1 - a vanish"));
            }
        }
        Ok(())
    }

    fn ratio_series(&self, prec: u32) -> QRatioSeries {
        let zero = BigReal::zero(prec);
        let mut dens = self.denominator_params.clone();
        dens.push(self.base.value().clone());
        let len = self.numerator_params.len().max(dens.len());
        let pairs = (0..len)
            .map(|i| {
                (
                    self.numerator_params.get(i).cloned().unwrap_or_else(|| zero.clone()),
                    dens.get(i).cloned().unwrap_or_else(|| zero.clone()),
                )
            })
            .collect();
        let one = BigReal::one(prec);
        let (lead, quadratic) = match &self.well_poised {
            Some(a) => ((&one - a).recip(), Some(a.clone())),
            None => (one, None),
        };
        let series = QRatioSeries::new(self.base.value().clone(), lead, self.argument.clone(), pairs);
        match quadratic {
            Some(w) => series.with_quadratic(w),
            None => series,
        }
    }
}

/// Sums the series by its term-ratio recurrence.
pub fn phi_series(spec: &PhiSeriesSpec, ctx: &PrecisionContext) -> Result<SumResult> {
    spec.check(ctx)?;
    spec.ratio_series(ctx.working_prec()).sum(ctx)
}

/// The first `count` terms, by the same recurrence `phi_series` uses.
pub fn phi_terms(spec: &PhiSeriesSpec, count: usize, ctx: &PrecisionContext) -> Result<Vec<BigReal>> {
    spec.check(ctx)?;
    spec.ratio_series(ctx.working_prec()).terms(count)
}

fn product_of(args: &[BigReal], q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let mut acc = BigReal::one(ctx.working_prec());
    for z in args {
        acc *= poch_infinite(z, q, ctx)?.value;
    }
    Ok(acc)
}

fn outcome(
    id: &str,
    q: &QBase,
    ctx: &PrecisionContext,
    eval: impl FnOnce(&PrecisionContext) -> Result<(SumResult, BigReal)>,
) -> Result<VerificationOutcome> {
    let (lhs, rhs) = eval(&evaluation_ctx(ctx))?;
    Ok(VerificationOutcome::judge(id, q.value(), &lhs, &rhs, ctx))
}

/// q-Gauss: ₂φ₁(a, b; c; q, c/ab) = (c/a, c/b; q)_∞ / (c, c/ab; q)_∞ with
/// a = q^{a_exp}, b = q^{b_exp}, c = q^{c_exp}. Returns (series, product).
pub fn gauss_sides(
    a_exp: &BigReal,
    b_exp: &BigReal,
    c_exp: &BigReal,
    q: &QBase,
    ctx: &PrecisionContext,
) -> Result<(SumResult, BigReal)> {
    let s = c_exp - a_exp - b_exp;
    if !s.is_positive() {
        return Err(QError::InvalidParams(format!(
            "c_exp-a_exp-b_exp must be positive, got {}",
            s
        )));
    }
    let spec = PhiSeriesSpec::new(
        vec![q.pow(a_exp), q.pow(b_exp)],
        vec![q.pow(c_exp)],
        q.clone(),
        q.pow(&s),
    );
    let lhs = phi_series(&spec, ctx)?;
    let num = product_of(&[q.pow(&(c_exp - a_exp)), q.pow(&(c_exp - b_exp))], q, ctx)?;
    let den = product_of(&[q.pow(c_exp), q.pow(&s)], q, ctx)?;
    Ok((lhs, num / den))
}

pub fn gauss_check(
    a_exp: &BigReal,
    b_exp: &BigReal,
    c_exp: &BigReal,
    q: &QBase,
    ctx: &PrecisionContext,
) -> Result<VerificationOutcome> {
    outcome("GAUSS_CHK", q, ctx, |inner| gauss_sides(a_exp, b_exp, c_exp, q, inner))
}

/// Very-well-poised ₆φ₅ summation with argument aq/(bcd):
/// (aq, aq/bc, aq/bd, aq/cd; q)_∞ / (aq/b, aq/c, aq/d, aq/bcd; q)_∞.
pub fn phi65_sides(
    a_exp: &BigReal,
    b_exp: &BigReal,
    c_exp: &BigReal,
    d_exp: &BigReal,
    q: &QBase,
    ctx: &PrecisionContext,
) -> Result<(SumResult, BigReal)> {
    let one = BigReal::one(ctx.working_prec());
    let s = &one + a_exp - b_exp - c_exp - d_exp;
    if !s.is_positive() {
        return Err(QError::InvalidParams(format!(
            "1+a_exp-b_exp-c_exp-d_exp must be positive, got {}",
            s
        )));
    }
    // exponent of aq/x
    let e = |x: &BigReal| a_exp + &one - x;
    let a = q.pow(a_exp);
    let spec = PhiSeriesSpec::new(
        vec![a.clone(), q.pow(b_exp), q.pow(c_exp), q.pow(d_exp)],
        vec![q.pow(&e(b_exp)), q.pow(&e(c_exp)), q.pow(&e(d_exp))],
        q.clone(),
        q.pow(&s),
    )
    .with_well_poised(a);
    let lhs = phi_series(&spec, ctx)?;
    let num = product_of(
        &[
            q.pow(&(a_exp + &one)),
            q.pow(&e(&(b_exp + c_exp))),
            q.pow(&e(&(b_exp + d_exp))),
            q.pow(&e(&(c_exp + d_exp))),
        ],
        q,
        ctx,
    )?;
    let den = product_of(
        &[q.pow(&e(b_exp)), q.pow(&e(c_exp)), q.pow(&e(d_exp)), q.pow(&s)],
        q,
        ctx,
    )?;
    Ok((lhs, num / den))
}

pub fn phi65_check(
    a_exp: &BigReal,
    b_exp: &BigReal,
    c_exp: &BigReal,
    d_exp: &BigReal,
    q: &QBase,
    ctx: &PrecisionContext,
) -> Result<VerificationOutcome> {
    outcome("PHI65_CHK", q, ctx, |inner| {
        phi65_sides(a_exp, b_exp, c_exp, d_exp, q, inner)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::poch_finite;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn big(c: &PrecisionContext, s: &str) -> BigReal {
        c.parse(s).unwrap()
    }

    #[test]
    fn zero_argument_gives_one() {
        let c = ctx();
        let q = QBase::parse("0.5", &c).unwrap();
        let spec = PhiSeriesSpec::new(vec![big(&c, "0.3")], vec![], q, c.big(0));
        let r = phi_series(&spec, &c).unwrap();
        assert_eq!(r.value, 1);
    }

    #[test]
    fn q_binomial_theorem() {
        // ₁φ₀(a;;q,z) = (az;q)_∞/(z;q)_∞
        let c = ctx();
        let q = QBase::parse("0.7", &c).unwrap();
        let (a, z) = (big(&c, "0.4"), big(&c, "0.6"));
        let spec = PhiSeriesSpec::new(vec![a.clone()], vec![], q.clone(), z.clone());
        let got = phi_series(&spec, &c).unwrap().value;
        let want = poch_infinite(&(&a * &z), &q, &c).unwrap().value / poch_infinite(&z, &q, &c).unwrap().value;
        assert!((got - &want).abs() <= c.rel_tol_big() * want);
    }

    #[test]
    fn gauss_instances_pass() {
        let c = ctx();
        for (a, b, cc, q) in [("0.6", "0.8", "2.0", "0.5"), ("1.0", "1.0", "3.0", "0.9")] {
            let q = QBase::parse(q, &c).unwrap();
            let out = gauss_check(&big(&c, a), &big(&c, b), &big(&c, cc), &q, &c).unwrap();
            assert!(out.passed(), "{out:?}");
        }
    }

    #[test]
    fn gauss_boundary_is_rejected() {
        let c = ctx();
        let q = QBase::parse("0.5", &c).unwrap();
        let err = gauss_check(&big(&c, "1.0"), &big(&c, "1.0"), &big(&c, "2.0"), &q, &c).unwrap_err();
        assert!(matches!(err, QError::InvalidParams(_)));
    }

    #[test]
    fn phi65_instances_pass() {
        let c = ctx();
        for (q, d) in [("0.25", "0.9"), ("0.5", "0.9"), ("0.5", "1.0")] {
            let q = QBase::parse(q, &c).unwrap();
            let out = phi65_check(&big(&c, "2.0"), &big(&c, "0.7"), &big(&c, "0.8"), &big(&c, d), &q, &c).unwrap();
            assert!(out.passed(), "{out:?}");
        }
    }

    #[test]
    fn phi65_divergent_exponents_are_rejected() {
        let c = ctx();
        let q = QBase::parse("0.25", &c).unwrap();
        let err = phi65_check(
            &big(&c, "1.0"),
            &big(&c, "0.7"),
            &big(&c, "0.8"),
            &big(&c, "0.9"),
            &q,
            &c,
        )
        .unwrap_err();
        assert!(matches!(err, QError::InvalidParams(_)));
    }

    #[test]
    fn vanishing_denominator_parameter() {
        let c = ctx();
        let q = QBase::parse("0.5", &c).unwrap();
        // b = q^{-2}
        let spec = PhiSeriesSpec::new(vec![big(&c, "0.3")], vec![c.big(4)], q, big(&c, "0.5"));
        assert!(matches!(phi_series(&spec, &c), Err(QError::Domain(_))));
    }

    #[test]
    fn recurrence_matches_direct_terms() {
        let c = ctx();
        let q = QBase::parse("0.45", &c).unwrap();
        let nums = vec![big(&c, "0.3"), big(&c, "-0.7"), big(&c, "0.55")];
        let dens = vec![big(&c, "0.2"), big(&c, "0.9")];
        let z = big(&c, "0.35");
        let spec = PhiSeriesSpec::new(nums.clone(), dens.clone(), q.clone(), z.clone());
        let terms = phi_terms(&spec, 30, &c).unwrap();
        for (n, t) in terms.iter().enumerate() {
            let n = n as u64;
            let mut want = z.powi(n as i64) / poch_finite(q.value(), &q, n);
            for a in &nums {
                want *= poch_finite(a, &q, n);
            }
            for b in &dens {
                want /= poch_finite(b, &q, n);
            }
            assert!((t - &want).abs() <= c.rel_tol_big() * want.abs());
        }
    }
}
