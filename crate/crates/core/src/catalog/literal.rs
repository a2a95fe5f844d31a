//! Printed forms of the rearranged series, evaluated exactly as displayed:
//! split head terms, shifted summation index, explicit q-powers.

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use crate::catalog::{Binding, T1Exact, T2Exact};
use crate::error::Result;
use crate::hyper::{gauss_sides, phi65_sides};
use crate::kernel::{pi_q, poch_infinite, QBase};
use crate::numeric::{sum_from, BigReal, PrecisionContext, SumResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiteralKey {
    T3LitL0,
    T3LitL1,
    T31Ex2,
    T41Sun,
    T41Ex3,
    Gauss,
    Phi65,
}

/// s(q) in literal LHS = s(q) · template LHS.
pub type SiblingScale = fn(&QBase, &PrecisionContext) -> BigReal;

impl LiteralKey {
    pub const ALL: [LiteralKey; 7] = [
        LiteralKey::T3LitL0,
        LiteralKey::T3LitL1,
        LiteralKey::T31Ex2,
        LiteralKey::T41Sun,
        LiteralKey::T41Ex3,
        LiteralKey::Gauss,
        LiteralKey::Phi65,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LiteralKey::T3LitL0 => "T3_LIT_L0",
            LiteralKey::T3LitL1 => "T3_LIT_L1",
            LiteralKey::T31Ex2 => "T31_EX2",
            LiteralKey::T41Sun => "T41_SUN",
            LiteralKey::T41Ex3 => "T41_EX3",
            LiteralKey::Gauss => "GAUSS_CHK",
            LiteralKey::Phi65 => "PHI65_CHK",
        }
    }

    /// (series side, closed form) as printed.
    pub fn sides(self, q: &QBase, ctx: &PrecisionContext) -> Result<(SumResult, BigReal)> {
        match self {
            LiteralKey::Gauss => {
                let e = |s: &str| ctx.parse(s);
                gauss_sides(&e("0.6")?, &e("0.8")?, &e("2.0")?, q, ctx)
            }
            LiteralKey::Phi65 => {
                let e = |s: &str| ctx.parse(s);
                phi65_sides(&e("2.0")?, &e("0.7")?, &e("0.8")?, &e("0.9")?, q, ctx)
            }
            _ => {
                let lhs = self.lhs(q, ctx)?;
                let (p, e) = self.prefactor(q, ctx).expect("printed display")?;
                Ok((lhs, p * pi_q(q, ctx)?.powi(e as i64)))
            }
        }
    }

    pub(crate) fn lhs(self, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
        let qs = Powers::new(q, ctx);
        match self {
            LiteralKey::T3LitL0 => t3_lit_l0(&qs, ctx),
            LiteralKey::T3LitL1 => t3_lit_l1(&qs, ctx),
            LiteralKey::T31Ex2 => t31_ex2(&qs, ctx),
            LiteralKey::T41Sun => t41_sun(&qs, ctx),
            LiteralKey::T41Ex3 => t41_ex3(&qs, ctx),
            LiteralKey::Gauss | LiteralKey::Phi65 => self.sides(q, ctx).map(|s| s.0),
        }
    }

    /// Closed form as P(q)·π_q^e; returns (P, e). None for the two summation
    /// formulas, whose closed forms carry no π_q.
    pub fn prefactor(self, q: &QBase, ctx: &PrecisionContext) -> Option<Result<(BigReal, i32)>> {
        let qs = Powers::new(q, ctx);
        let one = qs.one();
        let (q1, q2) = (&qs.q, &qs.q2);
        let out = match self {
            LiteralKey::T3LitL0 => Ok(((&one + q1).powi(4) * qs.frac(9, 4), -1)),
            LiteralKey::T3LitL1 => Ok((
                (&one + q1).powi(6) * (&one + q2).square() * qs.frac(9, 4) / (&one + q1 + q2).square(),
                -1,
            )),
            LiteralKey::T31Ex2 => t31_ex2_prefactor(&qs, ctx).map(|p| (p, -1)),
            LiteralKey::T41Sun => Ok(((&one - q2).square().recip() / qs.frac(1, 2), 2)),
            LiteralKey::T41Ex3 => {
                let q3 = q1 * q2;
                let q4 = q2.square();
                let num = (&one + q1 + q2) * (&one + q1 + q2 + &q3 + &q4) * qs.frac(5, 2);
                let den = (&one + q2).powi(3) * (&one - q2).powi(8);
                Ok((num / den, 2))
            }
            LiteralKey::Gauss | LiteralKey::Phi65 => return None,
        };
        Some(out)
    }

    /// The template record with the same content and the factor s(q) with
    /// literal LHS = s(q) · template LHS.
    pub fn sibling(self) -> Option<(Binding, SiblingScale)> {
        let r = |n: i64, d: i64| Rational::from((n, d));
        let t41 = |l: [i64; 4]| T2Exact::new([r(0, 1), r(1, 2), r(1, 2), r(1, 2)], l.map(Rational::from));
        let s: (Binding, fn(&QBase, &PrecisionContext) -> BigReal) = match self {
            LiteralKey::T3LitL0 => (
                Binding::T1(T1Exact {
                    alpha: r(1, 2),
                    a: r(-1, 1),
                    b: r(-1, 1),
                    c: r(0, 1),
                }),
                |_, ctx| BigReal::one(ctx.working_prec()),
            ),
            LiteralKey::T3LitL1 => (
                Binding::T1(T1Exact {
                    alpha: r(1, 2),
                    a: r(-1, 1),
                    b: r(-1, 1),
                    c: r(1, 1),
                }),
                |q, ctx| BigReal::one(ctx.working_prec()) + q.squared().value(),
            ),
            LiteralKey::T31Ex2 => (
                Binding::T2(T2Exact::new(
                    [r(1, 2), r(1, 2), r(1, 3), r(2, 3)],
                    [0, 0, 0, 1].map(Rational::from),
                )),
                |_, ctx| BigReal::from_i64(-1, ctx.working_prec()),
            ),
            LiteralKey::T41Sun => (Binding::T2S(t41([1, 0, 0, 0])), |q, ctx| {
                one_minus_q2(q, ctx).square().recip()
            }),
            LiteralKey::T41Ex3 => (Binding::T2S(t41([1, 1, 1, 1])), |q, ctx| {
                -one_minus_q2(q, ctx).powi(8).recip()
            }),
            LiteralKey::Gauss | LiteralKey::Phi65 => return None,
        };
        Some(s)
    }
}

impl fmt::Display for LiteralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LiteralKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        LiteralKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("no built-in literal named '{s}'"))
    }
}

/// q and Q = q² at working precision.
struct Powers {
    base: QBase,
    q: BigReal,
    q2: BigReal,
}

impl Powers {
    fn new(base: &QBase, ctx: &PrecisionContext) -> Self {
        let q = BigReal::from_float(rug::Float::with_val(ctx.working_prec(), base.value().as_float()));
        Powers {
            base: base.clone(),
            q2: q.square(),
            q,
        }
    }

    fn one(&self) -> BigReal {
        BigReal::one(self.q.prec())
    }

    fn int(&self, k: i64) -> BigReal {
        self.q.powi(k)
    }

    /// q^(num/den).
    fn frac(&self, num: i64, den: i64) -> BigReal {
        self.base.pow(&BigReal::ratio(num, den, self.q.prec()))
    }

    /// [s]_{q²} = (1 − q^{2s})/(1 − q²) for s = num/den.
    fn qint(&self, num: i64, den: i64) -> BigReal {
        (self.one() - self.frac(2 * num, den)) / (self.one() - &self.q2)
    }
}

/// Running [n + s]_{q²} as n advances: holds q^{2(n+s)}.
struct QIntRun {
    power: BigReal,
}

impl QIntRun {
    fn new(qs: &Powers, num: i64, den: i64) -> Self {
        QIntRun {
            power: qs.frac(2 * num, den),
        }
    }

    fn value(&self, qs: &Powers) -> BigReal {
        (qs.one() - &self.power) / (qs.one() - &qs.q2)
    }

    fn advance(&mut self, qs: &Powers) {
        self.power *= &qs.q2;
    }
}

fn one_minus_q2(q: &QBase, ctx: &PrecisionContext) -> BigReal {
    BigReal::one(ctx.working_prec()) - q.squared().value()
}

fn constant_ratio(r: BigReal) -> impl FnMut(u64) -> BigReal {
    move |_| r.clone()
}

/// q²(1+q)² + q⁴ + Σ_{n≥1} (1/2|q²)_n² / [n+1]_{q²}!² · q^{4n+4}.
fn t3_lit_l0(qs: &Powers, ctx: &PrecisionContext) -> Result<SumResult> {
    let one = qs.one();
    let head = &qs.q2 * (&one + &qs.q).square() + qs.int(4);
    // state at n: (1/2)_n, [n+1]!, q^{4n+4}
    let mut half = QIntRun::new(qs, 1, 2);
    let mut top = QIntRun::new(qs, 2, 1);
    let mut poch = half.value(qs);
    half.advance(qs);
    let mut fact = top.value(qs);
    top.advance(qs);
    let mut power = qs.int(8);
    let q4 = qs.int(4);
    sum_from(
        head,
        |_| {
            let t = (&poch / &fact).square() * &power;
            poch *= half.value(qs);
            half.advance(qs);
            fact *= top.value(qs);
            top.advance(qs);
            power *= &q4;
            Ok(t)
        },
        constant_ratio(q4.clone()),
        ctx,
    )
}

/// q²(1+q)²(1+q²) + q⁶ + (1+q²) Σ_{n≥1} (1/2|q²)_n² / ([n+1]_{q²}! [n+2]_{q²}!) · q^{6n+6}.
fn t3_lit_l1(qs: &Powers, ctx: &PrecisionContext) -> Result<SumResult> {
    let one = qs.one();
    let lift = &one + &qs.q2;
    let head = &qs.q2 * (&one + &qs.q).square() * &lift + qs.int(6);
    let mut half = QIntRun::new(qs, 1, 2);
    let mut f1_next = QIntRun::new(qs, 3, 1);
    let mut f2_next = QIntRun::new(qs, 4, 1);
    let mut poch = half.value(qs);
    half.advance(qs);
    // [2]! and [3]!
    let mut f1 = lift.clone();
    let mut f2 = &lift * qs.qint(3, 1);
    let mut power = qs.int(12);
    let q6 = qs.int(6);
    sum_from(
        head,
        |_| {
            let t = &lift * poch.square() / (&f1 * &f2) * &power;
            poch *= half.value(qs);
            half.advance(qs);
            f1 *= f1_next.value(qs);
            f1_next.advance(qs);
            f2 *= f2_next.value(qs);
            f2_next.advance(qs);
            power *= &q6;
            Ok(t)
        },
        constant_ratio(q6.clone()),
        ctx,
    )
}

/// q^{2/3}/((1+q)[1/3][5/6]) − Σ_{n≥1} (1−q^{4n+1})(1/2)_n²(1/3)_n(2/3)_{n−1}
///   / ((1−q²)[n]!²(7/6)_n(5/6)_{n+1}) · q^{2n}, all in base q².
fn t31_ex2(qs: &Powers, ctx: &PrecisionContext) -> Result<SumResult> {
    let one = qs.one();
    let head = qs.frac(2, 3) / ((&one + &qs.q) * qs.qint(1, 3) * qs.qint(5, 6));
    let one_minus_q2 = &one - &qs.q2;
    // shifts s of the q-integers [n+s] that advance each factor
    let mut r_half = QIntRun::new(qs, 3, 2);
    let mut r_third = QIntRun::new(qs, 4, 3);
    let mut r_two_thirds = QIntRun::new(qs, 2, 3);
    let mut r_fact = QIntRun::new(qs, 2, 1);
    let mut r_seven = QIntRun::new(qs, 13, 6);
    let mut r_five = QIntRun::new(qs, 17, 6);
    // values at n = 1
    let mut half = qs.qint(1, 2);
    let mut third = qs.qint(1, 3);
    let mut two_thirds = one.clone();
    let mut fact = one.clone();
    let mut seven = qs.qint(7, 6);
    let mut five = qs.qint(5, 6) * qs.qint(11, 6);
    let mut power = qs.q2.clone();
    let mut wp = qs.int(5);
    let q4 = qs.int(4);
    let ratio_bound = {
        let q2 = qs.q2.clone();
        let mut wp = qs.int(5);
        let q4 = q4.clone();
        let one = one.clone();
        move |_| {
            // q²(1−q^{4n+5})/(1−q^{4n+1}) at n = j+1
            let b = &q2 * (&one - &wp * &q4) / (&one - &wp);
            wp *= &q4;
            b
        }
    };
    sum_from(
        head,
        |_| {
            let num = (&one - &wp) * half.square() * &third * &two_thirds;
            let den = &one_minus_q2 * fact.square() * &seven * &five;
            let t = -(num / den * &power);
            half *= r_half.value(qs);
            r_half.advance(qs);
            third *= r_third.value(qs);
            r_third.advance(qs);
            two_thirds *= r_two_thirds.value(qs);
            r_two_thirds.advance(qs);
            fact *= r_fact.value(qs);
            r_fact.advance(qs);
            seven *= r_seven.value(qs);
            r_seven.advance(qs);
            five *= r_five.value(qs);
            r_five.advance(qs);
            power *= &qs.q2;
            wp *= &q4;
            Ok(t)
        },
        ratio_bound,
        ctx,
    )
}

/// [1/6]/([1/3]²[1/2]) · (q^{4/3}, q^{2/3}; q²)_∞/(q^{1/3}, q^{5/3}; q²)_∞ · q^{11/12}.
fn t31_ex2_prefactor(qs: &Powers, ctx: &PrecisionContext) -> Result<BigReal> {
    let base = qs.base.squared();
    let inf = |n: i64, d: i64| poch_infinite(&qs.frac(n, d), &base, ctx).map(|s| s.value);
    let k = inf(4, 3)? * inf(2, 3)? / (inf(1, 3)? * inf(5, 3)?);
    Ok(qs.qint(1, 6) / (qs.qint(1, 3).square() * qs.qint(1, 2)) * k * qs.frac(11, 12))
}

/// Σ_{n≥0} (1+q^{2n+1}) qⁿ/(1−q^{2n+1})².
fn t41_sun(qs: &Powers, ctx: &PrecisionContext) -> Result<SumResult> {
    let one = qs.one();
    let mut odd = qs.q.clone();
    let mut power = one.clone();
    sum_from(
        BigReal::zero(ctx.working_prec()),
        |_| {
            let t = (&one + &odd) * &power / (&one - &odd).square();
            odd *= &qs.q2;
            power *= &qs.q;
            Ok(t)
        },
        constant_ratio(qs.q.clone()),
        ctx,
    )
}

/// (1+q)q³/((1−q)⁵(1−q³)³) − Σ_{n≥1} (1+q^{2n+1}) q^{7n}
///   / ((1−q^{2n−1})³(1−q^{2n+1})²(1−q^{2n+3})³).
fn t41_ex3(qs: &Powers, ctx: &PrecisionContext) -> Result<SumResult> {
    let one = qs.one();
    let q3 = qs.int(3);
    let head = (&one + &qs.q) * &q3 / ((&one - &qs.q).powi(5) * (&one - &q3).powi(3));
    let mut odd = qs.q.clone(); // q^{2n−1}
    let q7 = qs.int(7);
    let mut power = q7.clone();
    sum_from(
        head,
        |_| {
            let o1 = &odd * &qs.q2;
            let o2 = &o1 * &qs.q2;
            let den = (&one - &odd).powi(3) * (&one - &o1).square() * (&one - &o2).powi(3);
            let t = -((&one + &o1) * &power / den);
            odd = o1;
            power *= &q7;
            Ok(t)
        },
        constant_ratio(q7.clone()),
        ctx,
    )
}
