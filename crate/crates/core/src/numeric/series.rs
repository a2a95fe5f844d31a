//! Tail-bounded infinite products and sums.

use crate::error::{QError, Result};
use crate::numeric::{BigReal, PrecisionContext};

/// Value of a truncated infinite product or series together with a rigorous
/// bound on the omitted remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub value: BigReal,
    pub terms_used: u64,
    /// Bound on |exact − value|, in the units of `value`.
    pub tail_bound: BigReal,
    pub converged: bool,
}

impl SumResult {
    pub fn exact(value: BigReal) -> Self {
        let prec = value.prec();
        SumResult {
            value,
            terms_used: 0,
            tail_bound: BigReal::zero(prec),
            converged: true,
        }
    }

    /// Tail bound relative to |value| (or absolute when value is zero).
    pub fn relative_bound(&self) -> BigReal {
        if self.value.is_zero() {
            self.tail_bound.clone()
        } else {
            &self.tail_bound / self.value.abs()
        }
    }
}

/// ∏_{n≥0} (1 − z·rⁿ) for |r| < 1.
///
/// Stops at the first N for which the remainder ∏_{n≥N}(1 − z rⁿ) provably
/// lies within `rel_tol/4` of 1, using
/// |ln ∏_{n≥N}| ≤ |z||r|^N / ((1−|r|)(1 − |z||r|^N)) and |R − 1| ≤ L/(1 − L).
/// Every included factor must be positive.
pub fn tail_bounded_product(z: &BigReal, r: &BigReal, ctx: &PrecisionContext) -> Result<SumResult> {
    let prec = ctx.working_prec();
    let one = BigReal::one(prec);
    if z.is_zero() {
        return Ok(SumResult::exact(one));
    }
    let abs_r = r.abs();
    if abs_r >= 1 {
        return Err(QError::domain(format!("product ratio |r| = {} is not below 1", abs_r)));
    }
    let abs_z = z.abs();
    let target = ctx.primitive_tol();
    let one_minus_r = &one - &abs_r;

    let mut acc = one.clone();
    let mut power = one.clone(); // r^n
    let mut n: u64 = 0;
    loop {
        let u = &abs_z * power.abs();
        if u < 1 {
            let log_bound = &u / (&one_minus_r * (&one - &u));
            if log_bound < 1 {
                let deviation = &log_bound / (&one - &log_bound);
                if deviation <= target {
                    let tail_bound = acc.abs() * &deviation;
                    return Ok(SumResult {
                        value: acc,
                        terms_used: n,
                        tail_bound,
                        converged: true,
                    });
                }
            }
        }
        if n >= ctx.max_terms() {
            let tail_bound = if u < 1 {
                let l = &u / (&one_minus_r * (&one - &u));
                acc.abs() * (l.exp() - 1i64)
            } else {
                BigReal::from_f64(f64::INFINITY, prec)
            };
            return Err(QError::NonConvergence {
                partial: Box::new(SumResult {
                    value: acc,
                    terms_used: n,
                    tail_bound,
                    converged: false,
                }),
            });
        }
        let factor = &one - z * &power;
        if !factor.is_positive() {
            return Err(QError::domain(format!(
                "product factor {} at n = {} is not positive (1 - z r^n with z = {})",
                factor, n, z
            )));
        }
        acc *= &factor;
        power *= r;
        n += 1;
    }
}

/// Σ_{n≥0} term(n), stopping once the geometric majorant of the remainder is
/// within `rel_tol/4` of the partial sum.
///
/// `term` is called with n = 0, 1, 2, … in order, so it may carry recurrence
/// state. `ratio_bound(n)` must bound |term(m+1)/term(m)| for every m ≥ n
/// whenever it returns a value below 1; values ≥ 1 mean "no bound yet".
pub fn tail_bounded_sum<T, R>(term: T, ratio_bound: R, ctx: &PrecisionContext) -> Result<SumResult>
where
    T: FnMut(u64) -> Result<BigReal>,
    R: FnMut(u64) -> BigReal,
{
    sum_from(BigReal::zero(ctx.working_prec()), term, ratio_bound, ctx)
}

/// As [`tail_bounded_sum`], with `initial` already in the partial sum (split
/// head terms). The stopping rule measures against the full partial sum.
pub fn sum_from<T, R>(initial: BigReal, mut term: T, mut ratio_bound: R, ctx: &PrecisionContext) -> Result<SumResult>
where
    T: FnMut(u64) -> Result<BigReal>,
    R: FnMut(u64) -> BigReal,
{
    let prec = ctx.working_prec();
    let target = ctx.primitive_tol();
    let one = BigReal::one(prec);
    let mut sum = initial;
    let mut last_bound = BigReal::from_f64(f64::INFINITY, prec);
    let mut n: u64 = 0;
    loop {
        if n >= ctx.max_terms() {
            return Err(QError::NonConvergence {
                partial: Box::new(SumResult {
                    value: sum,
                    terms_used: n,
                    tail_bound: last_bound,
                    converged: false,
                }),
            });
        }
        let t = term(n)?;
        if !t.is_finite() {
            return Err(QError::domain(format!("series term {} is not finite", n)));
        }
        sum += &t;
        let rho = ratio_bound(n);
        if !rho.is_negative() && rho < 1 {
            let tail = t.abs() * &rho / (&one - &rho);
            let allowed = if sum.is_zero() {
                target.clone()
            } else {
                &target * sum.abs()
            };
            if tail <= allowed {
                return Ok(SumResult {
                    value: sum,
                    terms_used: n + 1,
                    tail_bound: tail,
                    converged: true,
                });
            }
            last_bound = tail;
        }
        n += 1;
    }
}
