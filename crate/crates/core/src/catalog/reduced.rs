//! Closed forms of the template instances with π_q factored out, used by the
//! limit studies and as a second route to the template right-hand sides.

use rug::Rational;

use crate::catalog::{Binding, T1Exact, T2Exact};
use crate::error::Result;
use crate::kernel::{poch_general, poch_infinite, q_gamma, q_int, QBase};
use crate::numeric::{BigReal, PrecisionContext};

fn big(r: &Rational, ctx: &PrecisionContext) -> BigReal {
    BigReal::from_rational(r, ctx.working_prec())
}

fn is(r: &Rational, n: i64, d: i64) -> bool {
    *r == Rational::from((n, d))
}

/// (P, e) with RHS = P·π_q^e, for the instances whose α-parameters reduce
/// the gamma products to powers of π_q.
pub fn prefactor(binding: &Binding, q: &QBase, ctx: &PrecisionContext) -> Option<Result<(BigReal, i32)>> {
    match binding {
        Binding::T1(p) if is(&p.alpha, 1, 2) => Some(t1_half(p, q, ctx).map(|v| (v, -1))),
        Binding::T2(p) if matches_greek(p, [(1, 2), (1, 2), (1, 3), (2, 3)]) => {
            Some(t2_thirds(p, q, ctx).map(|v| (v, -1)))
        }
        Binding::T2S(p) if matches_greek(p, [(0, 1), (1, 2), (1, 2), (1, 2)]) => {
            Some(t2s_halves(p, q, ctx).map(|v| (v, 2)))
        }
        _ => None,
    }
}

fn matches_greek(p: &T2Exact, want: [(i64, i64); 4]) -> bool {
    p.greek().iter().zip(want).all(|(r, (n, d))| is(r, n, d))
}

/// (1/2)_a(1/2)_b Γ(c−a−b)/((1/2)_{c−a}(1/2)_{c−b}) · q^{1/4}, base q².
fn t1_half(p: &T1Exact, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let q2 = q.squared();
    let half = BigReal::ratio(1, 2, ctx.working_prec());
    let (a, b, c) = (big(&p.a, ctx), big(&p.b, ctx), big(&p.c, ctx));
    let ph = |o: &BigReal| poch_general(&half, o, &q2, ctx);
    Ok(
        ph(&a)? * ph(&b)? * q_gamma(&(&c - &a - &b), &q2, ctx)? / (ph(&(&c - &a))? * ph(&(&c - &b))?)
            * q.pow_ratio(1, 4),
    )
}

/// (α,β,γ,δ) = (1/2,1/2,1/3,2/3):
/// (1/2)_{−b}(1/3)_{−c}(2/3)_{−d}(1)_{a+b+c+d−1} / ((1/3)_{a+b+d}(2/3)_{a+b+c}(1/2)_{a+c+d})
/// · [1/6] (q^{4/3}, q^{2/3}; q²)_∞ q^{1/4} / (q^{1/3}, q^{5/3}; q²)_∞.
fn t2_thirds(p: &T2Exact, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let prec = ctx.working_prec();
    let q2 = q.squared();
    let (a, b, c, d) = (big(&p.a, ctx), big(&p.b, ctx), big(&p.c, ctx), big(&p.d, ctx));
    let one = BigReal::one(prec);
    let x = |n: i64, dd: i64| BigReal::ratio(n, dd, prec);
    let ph = |base: BigReal, o: BigReal| poch_general(&base, &o, &q2, ctx);
    let num = ph(x(1, 2), -&b)? * ph(x(1, 3), -&c)? * ph(x(2, 3), -&d)? * ph(one.clone(), &a + &b + &c + &d - &one)?;
    let den = ph(x(1, 3), &a + &b + &d)? * ph(x(2, 3), &a + &b + &c)? * ph(x(1, 2), &a + &c + &d)?;
    let inf = |n: i64, dd: i64| poch_infinite(&q.pow_ratio(n, dd), &q2, ctx).map(|s| s.value);
    let k = inf(4, 3)? * inf(2, 3)? / (inf(1, 3)? * inf(5, 3)?);
    Ok(num / den * q_int(&x(1, 6), &q2) * k * q.pow_ratio(1, 4))
}

/// (α,β,γ,δ) = (0,1/2,1/2,1/2), shifted template:
/// (1/2)_{−b}(1/2)_{−c}(1/2)_{−d}(1/2)_{a+b+c+d−1} / ((1)_{a+b+c−1}(1)_{a+b+d−1}(1)_{a+c+d−1} q^{1/2}).
fn t2s_halves(p: &T2Exact, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let prec = ctx.working_prec();
    let q2 = q.squared();
    let (a, b, c, d) = (big(&p.a, ctx), big(&p.b, ctx), big(&p.c, ctx), big(&p.d, ctx));
    let one = BigReal::one(prec);
    let half = BigReal::ratio(1, 2, prec);
    let ph = |base: &BigReal, o: BigReal| poch_general(base, &o, &q2, ctx);
    let num = ph(&half, -&b)? * ph(&half, -&c)? * ph(&half, -&d)? * ph(&half, &a + &b + &c + &d - &one)?;
    let den = ph(&one, &a + &b + &c - &one)? * ph(&one, &a + &b + &d - &one)? * ph(&one, &a + &c + &d - &one)?;
    Ok(num / den / q.pow_ratio(1, 2))
}
