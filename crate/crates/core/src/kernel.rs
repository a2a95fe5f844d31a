//! q-integers, q-factorials, q-shifted factorials of finite, infinite and
//! general real order, the q-gamma function, and the q-analogues `sin_q` and `π_q`.
//!
//! The base is always an explicit argument. Identities written in base q²
//! are evaluated by passing [`QBase::squared`]; nothing here squares
//! implicitly except `sin_q` and `pi_q`, whose definitions are stated in
//! terms of both q and q².

use crate::error::{QError, Result};
use crate::numeric::{tail_bounded_product, BigReal, PrecisionContext, SumResult};

/// A base q with 0 < q < 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QBase {
    q: BigReal,
}

impl QBase {
    pub fn new(q: BigReal) -> Result<Self> {
        if !(q.is_positive() && q < 1) {
            return Err(QError::domain(format!("q = {} is outside (0, 1)", q)));
        }
        Ok(QBase { q })
    }

    /// Parses `q` exactly and rounds it to the working precision of `ctx`.
    pub fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        Self::new(ctx.parse(text)?)
    }

    pub fn value(&self) -> &BigReal {
        &self.q
    }

    pub fn squared(&self) -> QBase {
        QBase { q: self.q.square() }
    }

    /// q^x for real x.
    pub fn pow(&self, x: &BigReal) -> BigReal {
        // q > 0 is an invariant of the type
        self.q.pow(x).expect("q is positive")
    }

    pub fn powi(&self, n: i64) -> BigReal {
        self.q.powi(n)
    }

    /// q^(num/den).
    pub fn pow_ratio(&self, num: i64, den: i64) -> BigReal {
        self.pow(&BigReal::ratio(num, den, self.q.prec()))
    }
}

/// A value together with a bound on its relative truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: BigReal,
    pub rel_bound: BigReal,
}

impl Estimate {
    pub fn exact(value: BigReal) -> Self {
        let prec = value.prec();
        Estimate {
            value,
            rel_bound: BigReal::zero(prec),
        }
    }

    fn from_sum(s: &SumResult) -> Self {
        Estimate {
            value: s.value.clone(),
            rel_bound: s.relative_bound(),
        }
    }

    /// Absolute error bound.
    pub fn abs_bound(&self) -> BigReal {
        &self.rel_bound * self.value.abs()
    }

    pub fn mul(&self, other: &Estimate) -> Estimate {
        let one = BigReal::one(self.value.prec());
        Estimate {
            value: &self.value * &other.value,
            rel_bound: (&one + &self.rel_bound) * (&one + &other.rel_bound) - &one,
        }
    }

    /// Division widens the divisor's bound to r/(1−r).
    pub fn div(&self, other: &Estimate) -> Estimate {
        self.mul(&other.recip())
    }

    pub fn recip(&self) -> Estimate {
        let one = BigReal::one(self.value.prec());
        Estimate {
            value: self.value.recip(),
            rel_bound: &self.rel_bound / (&one - &self.rel_bound),
        }
    }

    pub fn powi(&self, n: u32) -> Estimate {
        let mut out = Estimate::exact(BigReal::one(self.value.prec()));
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, factor: &BigReal) -> Estimate {
        Estimate {
            value: &self.value * factor,
            rel_bound: self.rel_bound.clone(),
        }
    }
}

/// [z]_q = (1 − q^z)/(1 − q).
pub fn q_int(z: &BigReal, q: &QBase) -> BigReal {
    let one = BigReal::one(z.prec().max(q.value().prec()));
    (&one - q.pow(z)) / (&one - q.value())
}

/// [n]_q! = ∏_{k=1}^{n} [k]_q.
pub fn q_factorial(n: u64, q: &QBase) -> BigReal {
    let prec = q.value().prec();
    let one = BigReal::one(prec);
    let one_minus_q = &one - q.value();
    let mut acc = one.clone();
    let mut power = q.value().clone();
    for _ in 1..=n {
        acc *= (&one - &power) / &one_minus_q;
        power *= q.value();
    }
    acc
}

/// (z;q)_n = ∏_{k=0}^{n−1} (1 − z q^k).
pub fn poch_finite(z: &BigReal, q: &QBase, n: u64) -> BigReal {
    let prec = z.prec().max(q.value().prec());
    let one = BigReal::one(prec);
    let mut acc = one.clone();
    let mut zk = z.clone();
    for _ in 0..n {
        acc *= &one - &zk;
        zk *= q.value();
    }
    acc
}

/// (z;q)_∞, every factor required positive.
pub fn poch_infinite(z: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
    tail_bounded_product(z, q.value(), ctx)
}

/// Returns the non-positive integer `x` sits on, if any, within the pole
/// threshold of `ctx`.
pub fn gamma_pole(x: &BigReal, ctx: &PrecisionContext) -> Option<i64> {
    let (n, d) = x.integer_distance()?;
    (n <= 0 && d < ctx.pole_threshold()).then_some(n)
}

fn integer_order(alpha: &BigReal, ctx: &PrecisionContext) -> Option<i64> {
    let (n, d) = alpha.integer_distance()?;
    (d < ctx.pole_threshold()).then_some(n)
}

/// Γ_q(x) = (q;q)_∞ / (q^x;q)_∞ · (1 − q)^{1−x}.
pub fn q_gamma(x: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    q_gamma_est(x, q, ctx).map(|e| e.value)
}

pub fn q_gamma_est(x: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<Estimate> {
    if let Some(n) = gamma_pole(x, ctx) {
        return Err(QError::pole(format!("Γ_q({}) sits on the pole at {}", x, n)));
    }
    if !x.is_positive() {
        // Γ_q(x) = Γ_q(x + s) / ∏_{k<s} [x + k]_q with x + s > 0
        let s = x.nearest_integer().unwrap_or(0).unsigned_abs() + 1;
        let shifted = x + BigReal::from_i64(s as i64, x.prec());
        let upper = q_gamma_est(&shifted, q, ctx)?;
        let mut denom = BigReal::one(ctx.working_prec());
        for k in 0..s {
            denom *= q_int(&(x + BigReal::from_i64(k as i64, x.prec())), q);
        }
        return Ok(Estimate {
            value: &upper.value / &denom,
            rel_bound: upper.rel_bound,
        });
    }
    let one = BigReal::one(ctx.working_prec());
    let qq = poch_infinite(q.value(), q, ctx)?;
    let qx = poch_infinite(&q.pow(x), q, ctx)?;
    let factor = (&one - q.value()).pow(&(&one - x))?;
    Ok(Estimate::from_sum(&qq).div(&Estimate::from_sum(&qx)).scale(&factor))
}

/// (x|q)_α = Γ_q(x + α)/Γ_q(x).
///
/// Integer orders use the finite products (x|q)_n = ∏_{k<n}[x+k]_q and
/// (x|q)_{−n} = 1/∏_{k<n}[x−n+k]_q; other orders use the gamma ratio.
pub fn poch_general(x: &BigReal, alpha: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    poch_general_est(x, alpha, q, ctx).map(|e| e.value)
}

pub fn poch_general_est(x: &BigReal, alpha: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<Estimate> {
    let prec = ctx.working_prec();
    if let Some(n) = integer_order(alpha, ctx) {
        if n >= 0 {
            return Ok(Estimate::exact(rising_q_product(x, n as u64, q)));
        }
        let m = n.unsigned_abs();
        let start = x - BigReal::from_i64(m as i64, prec);
        let mut acc = BigReal::one(prec);
        for k in 0..m {
            let arg = &start + BigReal::from_i64(k as i64, prec);
            if arg.abs() < ctx.pole_threshold() {
                return Err(QError::pole(format!(
                    "({}|q)_{} has the vanishing factor [{}]_q in its denominator",
                    x, n, arg
                )));
            }
            acc *= q_int(&arg, q);
        }
        return Ok(Estimate::exact(acc.recip()));
    }
    let upper = x + alpha;
    if gamma_pole(x, ctx).is_some() || gamma_pole(&upper, ctx).is_some() {
        return Err(QError::pole(format!(
            "({}|q)_{} needs Γ_q at {} and {}, one of which is a pole",
            x, alpha, upper, x
        )));
    }
    let num = q_gamma_est(&upper, q, ctx)?;
    let den = q_gamma_est(x, q, ctx)?;
    Ok(num.div(&den))
}

/// ∏_{k<n} [x + k]_q.
pub(crate) fn rising_q_product(x: &BigReal, n: u64, q: &QBase) -> BigReal {
    let prec = x.prec().max(q.value().prec());
    let one = BigReal::one(prec);
    let one_minus_q = &one - q.value();
    let mut acc = one.clone();
    let mut power = q.pow(x);
    for _ in 0..n {
        acc *= (&one - &power) / &one_minus_q;
        power *= q.value();
    }
    acc
}

/// sin_q(πx) = q^{(x−1/2)²} (q^{2−2x};q²)_∞ (q^{2x};q²)_∞ / (q;q²)_∞², for 0 < x < 1.
///
/// Takes x; the value is the q-analogue of sin(πx).
pub fn sin_q(x: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    sin_q_est(x, q, ctx).map(|e| e.value)
}

pub fn sin_q_est(x: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<Estimate> {
    if !(x.is_positive() && *x < 1) {
        return Err(QError::domain(format!("sin_q needs 0 < x < 1, got {}", x)));
    }
    let prec = ctx.working_prec();
    let two = BigReal::from_i64(2, prec);
    let q2 = q.squared();
    let half = BigReal::ratio(1, 2, prec);
    let lead = q.pow(&(x - &half).square());
    let a = poch_infinite(&q.pow(&(&two - &two * x)), &q2, ctx)?;
    let b = poch_infinite(&q.pow(&(&two * x)), &q2, ctx)?;
    let c = poch_infinite(q.value(), &q2, ctx)?;
    Ok(Estimate::from_sum(&a)
        .mul(&Estimate::from_sum(&b))
        .div(&Estimate::from_sum(&c).powi(2))
        .scale(&lead))
}

/// π_q = (1 − q²) q^{1/4} (q²;q²)_∞² / (q;q²)_∞².
pub fn pi_q(q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    pi_q_est(q, ctx).map(|e| e.value)
}

pub fn pi_q_est(q: &QBase, ctx: &PrecisionContext) -> Result<Estimate> {
    let one = BigReal::one(ctx.working_prec());
    let q2 = q.squared();
    let num = poch_infinite(q2.value(), &q2, ctx)?;
    let den = poch_infinite(q.value(), &q2, ctx)?;
    let lead = (&one - q2.value()) * q.pow_ratio(1, 4);
    Ok(Estimate::from_sum(&num)
        .powi(2)
        .div(&Estimate::from_sum(&den).powi(2))
        .scale(&lead))
}

/// Γ_{q²}(x)Γ_{q²}(1−x) − (π_q / sin_q(πx)) q^{x(x−1)}.
pub fn reflection_residual(x: &BigReal, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let one = BigReal::one(ctx.working_prec());
    let q2 = q.squared();
    let lhs = q_gamma(x, &q2, ctx)? * q_gamma(&(&one - x), &q2, ctx)?;
    let rhs = pi_q(q, ctx)? / sin_q(x, q, ctx)? * q.pow(&(x * (x - &one)));
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn q(text: &str) -> QBase {
        QBase::parse(text, &ctx()).unwrap()
    }

    fn close(a: &BigReal, b: &BigReal, tol: f64) -> bool {
        let scale = b.abs().max(BigReal::one(a.prec()));
        (a - b).abs() <= scale * BigReal::from_f64(tol, a.prec())
    }

    #[test]
    fn qbase_rejects_out_of_range() {
        let c = ctx();
        assert!(QBase::new(c.big(0)).is_err());
        assert!(QBase::new(c.big(1)).is_err());
        assert!(QBase::new(c.ratio(3, 2)).is_err());
        assert!(QBase::new(c.ratio(-1, 2)).is_err());
    }

    #[test]
    fn q_int_values() {
        let c = ctx();
        let b = q("0.5");
        assert_eq!(q_int(&c.big(0), &b), 0);
        assert!(close(&q_int(&c.big(1), &b), &c.big(1), 1e-70));
        assert!(close(&q_int(&c.big(2), &b), &c.ratio(3, 2), 1e-70));
    }

    #[test]
    fn q_factorial_values() {
        let c = ctx();
        let b = q("0.5");
        assert_eq!(q_factorial(0, &b), 1);
        assert_eq!(q_factorial(1, &b), 1);
        assert!(close(&q_factorial(3, &b), &c.ratio(21, 8), 1e-70));
    }

    #[test]
    fn poch_finite_values() {
        let c = ctx();
        let b = q("0.5");
        assert_eq!(poch_finite(&c.ratio(1, 3), &b, 0), 1);
        assert_eq!(poch_finite(&c.big(0), &b, 7), 1);
        assert!(close(&poch_finite(&c.ratio(1, 2), &b, 2), &c.ratio(3, 8), 1e-70));
    }

    #[test]
    fn poch_infinite_edge_cases() {
        let c = ctx();
        let b = q("0.5");
        assert_eq!(poch_infinite(&c.big(0), &b, &c).unwrap().value, 1);
        assert!(matches!(poch_infinite(&c.big(2), &b, &c), Err(QError::Domain(_))));
    }

    #[test]
    fn q_gamma_at_one_and_two() {
        let c = ctx();
        for text in ["0.1", "0.5", "0.7", "0.9"] {
            let b = q(text);
            assert!(close(&q_gamma(&c.big(1), &b, &c).unwrap(), &c.big(1), 1e-29));
            assert!(close(&q_gamma(&c.big(2), &b, &c).unwrap(), &c.big(1), 1e-29));
        }
    }

    #[test]
    fn q_gamma_poles() {
        let c = ctx();
        let b = q("0.5");
        for x in [0, -1, -3] {
            assert!(matches!(q_gamma(&c.big(x), &b, &c), Err(QError::Pole(_))));
        }
        let near = c.big(-2) + BigReal::pow2(-200, c.working_prec());
        assert!(matches!(q_gamma(&near, &b, &c), Err(QError::Pole(_))));
        let off = c.big(-2) + BigReal::pow2(-100, c.working_prec());
        assert!(q_gamma(&off, &b, &c).is_ok());
    }

    #[test]
    fn q_gamma_negative_argument_uses_shift_law() {
        let c = ctx();
        let b = q("0.3");
        let x = c.parse("-1.5").unwrap();
        let g = q_gamma(&x, &b, &c).unwrap();
        let up = q_gamma(&(&x + c.big(2)), &b, &c).unwrap();
        let expected = up / (q_int(&x, &b) * q_int(&(&x + c.big(1)), &b));
        assert!(close(&g, &expected, 1e-29));
    }

    #[test]
    fn poch_general_special_orders() {
        let c = ctx();
        let b = q("0.5");
        let x = c.parse("0.37").unwrap();
        assert_eq!(poch_general(&x, &c.big(0), &b, &c).unwrap(), 1);
        assert!(close(
            &poch_general(&x, &c.big(1), &b, &c).unwrap(),
            &q_int(&x, &b),
            1e-70
        ));
        let inv = q_int(&(&x - c.big(1)), &b).recip();
        assert!(close(&poch_general(&x, &c.big(-1), &b, &c).unwrap(), &inv, 1e-70));
    }

    #[test]
    fn poch_general_negative_order_pole() {
        let c = ctx();
        let b = q("0.5");
        // (2|q)_{-3} = 1/([-1][0][1]) is singular
        let err = poch_general(&c.big(2), &c.big(-3), &b, &c).unwrap_err();
        assert!(matches!(err, QError::Pole(_)));
    }

    #[test]
    fn poch_general_half_to_two() {
        let c = ctx();
        let b = q("0.5");
        let half = c.ratio(1, 2);
        let got = poch_general(&half, &c.ratio(3, 2), &b, &c).unwrap();
        let expected = q_gamma(&c.big(2), &b, &c).unwrap() / q_gamma(&half, &b, &c).unwrap();
        assert!(close(&got, &expected, 1e-29));
    }

    #[test]
    fn sin_q_domain_and_half() {
        let c = ctx();
        let b = q("0.3");
        assert!(close(&sin_q(&c.ratio(1, 2), &b, &c).unwrap(), &c.big(1), 1e-29));
        assert!(matches!(sin_q(&c.big(0), &b, &c), Err(QError::Domain(_))));
        assert!(matches!(sin_q(&c.big(1), &b, &c), Err(QError::Domain(_))));
        assert!(matches!(sin_q(&c.ratio(3, 2), &b, &c), Err(QError::Domain(_))));
    }

    #[test]
    fn pi_q_small_q_expansion() {
        let c = ctx();
        let b = q("0.01");
        let qv = b.value();
        let one = c.big(1);
        let q2 = qv.square();
        let approx = (&one - &q2) * b.pow_ratio(1, 4) * (&one - &q2).square() / (&one - qv).square();
        let got = pi_q(&b, &c).unwrap();
        assert!((got - approx).abs() < c.parse("1e-3").unwrap());
    }

    #[test]
    fn estimate_bounds_compose() {
        let c = ctx();
        let b = q("0.5");
        let e = pi_q_est(&b, &c).unwrap();
        assert!(e.rel_bound.is_positive());
        assert!(e.rel_bound < c.rel_tol_big() * 2i64);
    }
}
