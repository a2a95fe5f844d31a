//! The two master summation templates and the shifted variant of the second.
//!
//! Every series here is in base Q = q², with terms assembled from factors
//! (x|Q)_{o+n}. The n = 0 value of each factor is computed once by
//! [`poch_general`](crate::kernel::poch_general); after that
//! (x|Q)_{o+n+1} = (x|Q)_{o+n}·[x+o+n]_Q, which is a ratio series in Qⁿ.

use crate::error::{QError, Result};
use crate::hyper::QRatioSeries;
use crate::kernel::{gamma_pole, pi_q_est, poch_general_est, q_gamma_est, sin_q_est, Estimate, QBase};
use crate::numeric::{BigReal, PrecisionContext, SumResult};

/// Parameters (α, a, b, c) of the first template; c − a − b > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct T1Params {
    alpha: BigReal,
    a: BigReal,
    b: BigReal,
    c: BigReal,
}

impl T1Params {
    pub fn new(alpha: BigReal, a: BigReal, b: BigReal, c: BigReal) -> Result<Self> {
        let s = &c - &a - &b;
        if !s.is_positive() {
            return Err(QError::InvalidParams(format!("c-a-b must be positive, got {}", s)));
        }
        Ok(T1Params { alpha, a, b, c })
    }

    pub fn alpha(&self) -> &BigReal {
        &self.alpha
    }

    pub fn a(&self) -> &BigReal {
        &self.a
    }

    pub fn b(&self) -> &BigReal {
        &self.b
    }

    pub fn c(&self) -> &BigReal {
        &self.c
    }
}

/// Parameters (α, β, γ, δ; a, b, c, d) of the second template.
#[derive(Debug, Clone, PartialEq)]
pub struct T2Params {
    alpha: BigReal,
    beta: BigReal,
    gamma: BigReal,
    delta: BigReal,
    a: BigReal,
    b: BigReal,
    c: BigReal,
    d: BigReal,
}

impl T2Params {
    /// Requires a+b+c+d+1+α−β−γ−δ > 0.
    pub fn new(greek: [BigReal; 4], latin: [BigReal; 4]) -> Result<Self> {
        let [alpha, beta, gamma, delta] = greek;
        let [a, b, c, d] = latin;
        let p = T2Params {
            alpha,
            beta,
            gamma,
            delta,
            a,
            b,
            c,
            d,
        };
        let half = p.half_a();
        if !half.is_positive() {
            return Err(QError::InvalidParams(format!(
                "a+b+c+d+1+alpha-beta-gamma-delta must be positive, got {}",
                half
            )));
        }
        Ok(p)
    }

    fn half_a(&self) -> BigReal {
        &self.a + &self.b + &self.c + &self.d + 1i64 + &self.alpha - &self.beta - &self.gamma - &self.delta
    }

    /// A = 2(a+b+c+d+1+α−β−γ−δ).
    pub fn big_a(&self) -> BigReal {
        self.half_a() * 2i64
    }

    pub fn alpha(&self) -> &BigReal {
        &self.alpha
    }

    pub fn beta(&self) -> &BigReal {
        &self.beta
    }

    pub fn gamma(&self) -> &BigReal {
        &self.gamma
    }

    pub fn delta(&self) -> &BigReal {
        &self.delta
    }

    pub fn a(&self) -> &BigReal {
        &self.a
    }

    pub fn b(&self) -> &BigReal {
        &self.b
    }

    pub fn c(&self) -> &BigReal {
        &self.c
    }

    pub fn d(&self) -> &BigReal {
        &self.d
    }
}

/// A factor (x|Q)_{offset+n}.
struct Factor {
    label: &'static str,
    x: BigReal,
    offset: BigReal,
}

fn factor(label: &'static str, x: BigReal, offset: BigReal) -> Factor {
    Factor { label, x, offset }
}

/// Rejects factors whose base is a Γ pole or whose argument x+offset+n hits
/// a non-positive integer for some n below the term cap.
fn screen(factors: &[Factor], ctx: &PrecisionContext) -> Result<()> {
    for f in factors {
        if let Some(p) = gamma_pole(&f.x, ctx) {
            return Err(QError::pole(format!("{}: base {} is the Γ pole {}", f.label, f.x, p)));
        }
        let arg = &f.x + &f.offset;
        if let Some(p) = gamma_pole(&arg, ctx) {
            if p.unsigned_abs() < ctx.max_terms() {
                return Err(QError::pole(format!(
                    "{}: argument {} + n reaches the Γ pole {} at n = {}",
                    f.label, arg, p, -p
                )));
            }
        }
    }
    Ok(())
}

fn poch_labeled(label: &str, x: &BigReal, order: &BigReal, q2: &QBase, ctx: &PrecisionContext) -> Result<Estimate> {
    poch_general_est(x, order, q2, ctx).map_err(|e| relabel(label, e))
}

fn gamma_labeled(label: &str, x: &BigReal, q2: &QBase, ctx: &PrecisionContext) -> Result<Estimate> {
    q_gamma_est(x, q2, ctx).map_err(|e| relabel(label, e))
}

fn relabel(label: &str, e: QError) -> QError {
    match e {
        QError::Pole(m) => QError::Pole(format!("{label}: {m}")),
        QError::Domain(m) => QError::Domain(format!("{label}: {m}")),
        other => other,
    }
}

/// Builds Σ_n z^n·∏num(x|Q)_{o+n}/∏den(x|Q)_{o+n} as a ratio series, times
/// (1 − W Q^{2n})/(1 − Q) when `well_poised` is W.
/// Both lists must have the same length so the (1 − Q) factors of the
/// q-integers cancel in the ratio.
fn template_series(
    num: &[Factor],
    den: &[Factor],
    q2: &QBase,
    z: BigReal,
    well_poised: Option<BigReal>,
    ctx: &PrecisionContext,
) -> Result<(QRatioSeries, BigReal)> {
    debug_assert_eq!(num.len(), den.len());
    screen(num, ctx)?;
    screen(den, ctx)?;
    let one = BigReal::one(ctx.working_prec());
    let mut lead = match &well_poised {
        Some(_) => Estimate::exact((&one - q2.value()).recip()),
        None => Estimate::exact(one),
    };
    for f in num {
        lead = lead.mul(&poch_labeled(f.label, &f.x, &f.offset, q2, ctx)?);
    }
    for f in den {
        lead = lead.div(&poch_labeled(f.label, &f.x, &f.offset, q2, ctx)?);
    }
    let pairs = num
        .iter()
        .zip(den)
        .map(|(n, d)| (q2.pow(&(&n.x + &n.offset)), q2.pow(&(&d.x + &d.offset))))
        .collect();
    let series = QRatioSeries::new(q2.value().clone(), lead.value, z, pairs);
    let series = match well_poised {
        Some(w) => series.with_quadratic(w),
        None => series,
    };
    Ok((series, lead.rel_bound))
}

/// Folds the relative error of the n = 0 constants into the tail bound.
fn sum_with_lead_error(series: &QRatioSeries, lead_rel: &BigReal, ctx: &PrecisionContext) -> Result<SumResult> {
    let mut s = series.sum(ctx)?;
    s.tail_bound = &s.tail_bound + s.value.abs() * lead_rel;
    Ok(s)
}

/// The first template's series, for callers that want its terms.
pub fn t1_series(p: &T1Params, q: &QBase, ctx: &PrecisionContext) -> Result<(QRatioSeries, BigReal)> {
    let prec = ctx.working_prec();
    let one = BigReal::one(prec);
    let zero = BigReal::zero(prec);
    let q2 = q.squared();
    let num = [
        factor("(alpha|q^2)_{a+n}", p.alpha.clone(), p.a.clone()),
        factor("(1-alpha|q^2)_{b+n}", &one - &p.alpha, p.b.clone()),
    ];
    // [n]! = (1|Q)_n and Γ_Q(c+n+1) = (1|Q)_{c+n}
    let den = [
        factor("[n]_{q^2}!", one.clone(), zero),
        factor("Gamma_{q^2}(c+n+1)", one.clone(), p.c.clone()),
    ];
    let z = q2.pow(&(&p.c - &p.a - &p.b));
    template_series(&num, &den, &q2, z, None, ctx)
}

/// Σ (α|q²)_{a+n}(1−α|q²)_{b+n} / ([n]_{q²}! Γ_{q²}(c+n+1)) · q^{2(c−a−b)n}.
pub fn t1_lhs(p: &T1Params, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
    let (series, lead_rel) = t1_series(p, q, ctx)?;
    sum_with_lead_error(&series, &lead_rel, ctx)
}

/// (α|q²)_a(1−α|q²)_b Γ_{q²}(c−a−b) / ((1−α|q²)_{c−a}(α|q²)_{c−b})
/// · q^{−α(α−1)} sin_q(πα)/π_q, for 0 < α < 1.
pub fn t1_rhs(p: &T1Params, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let one = BigReal::one(ctx.working_prec());
    let q2 = q.squared();
    let beta = &one - &p.alpha;
    let ca = &p.c - &p.a;
    let cb = &p.c - &p.b;
    let v = poch_labeled("(alpha|q^2)_a", &p.alpha, &p.a, &q2, ctx)?
        .mul(&poch_labeled("(1-alpha|q^2)_b", &beta, &p.b, &q2, ctx)?)
        .mul(&gamma_labeled("Gamma_{q^2}(c-a-b)", &(&p.c - &p.a - &p.b), &q2, ctx)?)
        .div(&poch_labeled("(1-alpha|q^2)_{c-a}", &beta, &ca, &q2, ctx)?)
        .div(&poch_labeled("(alpha|q^2)_{c-b}", &p.alpha, &cb, &q2, ctx)?)
        .mul(&sin_q_est(&p.alpha, q, ctx)?)
        .div(&pi_q_est(q, ctx)?)
        .scale(&q.pow(&-(&p.alpha * (&p.alpha - &one))));
    Ok(v.value)
}

fn t2_common(p: &T2Params, first: Factor, q: &QBase, ctx: &PrecisionContext) -> Result<(QRatioSeries, BigReal)> {
    let prec = ctx.working_prec();
    let one = BigReal::one(prec);
    let q2 = q.squared();
    let num = [
        first,
        factor("(beta|q^2)_{n-b}", p.beta.clone(), -&p.b),
        factor("(gamma|q^2)_{n-c}", p.gamma.clone(), -&p.c),
        factor("(delta|q^2)_{n-d}", p.delta.clone(), -&p.d),
    ];
    let shift = |x: &BigReal| &one + &p.alpha - x;
    let den = [
        factor("[n]_{q^2}!", one.clone(), BigReal::zero(prec)),
        factor("(1+alpha-beta|q^2)_{a+b+n}", shift(&p.beta), &p.a + &p.b),
        factor("(1+alpha-gamma|q^2)_{a+c+n}", shift(&p.gamma), &p.a + &p.c),
        factor("(1+alpha-delta|q^2)_{a+d+n}", shift(&p.delta), &p.a + &p.d),
    ];
    let z = q2.pow(&p.half_a());
    // (1 − Q^{2n+a+α})/(1 − Q)
    let w = q2.pow(&(&p.a + &p.alpha));
    template_series(&num, &den, &q2, z, Some(w), ctx)
}

/// The second template's series.
pub fn t2_series(p: &T2Params, q: &QBase, ctx: &PrecisionContext) -> Result<(QRatioSeries, BigReal)> {
    t2_common(p, factor("(alpha|q^2)_{a+n}", p.alpha.clone(), p.a.clone()), q, ctx)
}

/// Σ (1−q^{4n+2a+2α})(α|q²)_{a+n}(β|q²)_{n−b}(γ|q²)_{n−c}(δ|q²)_{n−d}
///   / ((1−q²)[n]_{q²}!(1+α−β|q²)_{a+b+n}(1+α−γ|q²)_{a+c+n}(1+α−δ|q²)_{a+d+n}) · q^{An}.
pub fn t2_lhs(p: &T2Params, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
    let (series, lead_rel) = t2_series(p, q, ctx)?;
    sum_with_lead_error(&series, &lead_rel, ctx)
}

/// The shifted template's series: (α|q²)_{a+n} becomes (α+1|q²)_{a+n−1}.
pub fn t2s_series(p: &T2Params, q: &QBase, ctx: &PrecisionContext) -> Result<(QRatioSeries, BigReal)> {
    let first = factor("(alpha+1|q^2)_{a+n-1}", &p.alpha + 1i64, &p.a - 1i64);
    t2_common(p, first, q, ctx)
}

pub fn t2s_lhs(p: &T2Params, q: &QBase, ctx: &PrecisionContext) -> Result<SumResult> {
    let (series, lead_rel) = t2s_series(p, q, ctx)?;
    sum_with_lead_error(&series, &lead_rel, ctx)
}

/// Builds ∏Γ(num)/∏Γ(den) · ∏(x|q²)_o / ∏(x|q²)_o.
fn gamma_poch_product(
    gammas_num: &[(&str, BigReal)],
    gammas_den: &[(&str, BigReal)],
    poch_num: &[(&str, BigReal, BigReal)],
    poch_den: &[(&str, BigReal, BigReal)],
    q2: &QBase,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    for (label, x) in gammas_num.iter().chain(gammas_den) {
        if let Some(p) = gamma_pole(x, ctx) {
            return Err(QError::pole(format!("{label}: argument {x} is the Γ pole {p}")));
        }
    }
    let mut acc = Estimate::exact(BigReal::one(ctx.working_prec()));
    for (label, x) in gammas_num {
        acc = acc.mul(&gamma_labeled(label, x, q2, ctx)?);
    }
    for (label, x) in gammas_den {
        acc = acc.div(&gamma_labeled(label, x, q2, ctx)?);
    }
    for (label, x, o) in poch_num {
        acc = acc.mul(&poch_labeled(label, x, o, q2, ctx)?);
    }
    for (label, x, o) in poch_den {
        acc = acc.div(&poch_labeled(label, x, o, q2, ctx)?);
    }
    Ok(acc.value)
}

/// The second template's closed form.
pub fn t2_rhs(p: &T2Params, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let one = BigReal::one(ctx.working_prec());
    let two = &one + &one;
    let al = &p.alpha;
    let (be, ga, de) = (&p.beta, &p.gamma, &p.delta);
    let top = &two + al - be - ga - de;
    let sum4 = &p.a + &p.b + &p.c + &p.d - &one;
    gamma_poch_product(
        &[
            ("Gamma_{q^2}(1+alpha-beta)", &one + al - be),
            ("Gamma_{q^2}(1+alpha-gamma)", &one + al - ga),
            ("Gamma_{q^2}(1+alpha-delta)", &one + al - de),
            ("Gamma_{q^2}(2+alpha-beta-gamma-delta)", top.clone()),
        ],
        &[
            ("Gamma_{q^2}(alpha)", al.clone()),
            ("Gamma_{q^2}(1+alpha-beta-gamma)", &one + al - be - ga),
            ("Gamma_{q^2}(1+alpha-beta-delta)", &one + al - be - de),
            ("Gamma_{q^2}(1+alpha-gamma-delta)", &one + al - ga - de),
        ],
        &[
            ("(beta|q^2)_{-b}", be.clone(), -&p.b),
            ("(gamma|q^2)_{-c}", ga.clone(), -&p.c),
            ("(delta|q^2)_{-d}", de.clone(), -&p.d),
            ("(2+alpha-beta-gamma-delta|q^2)_{a+b+c+d-1}", top, sum4),
        ],
        &[
            (
                "(1+alpha-beta-gamma|q^2)_{a+b+c}",
                &one + al - be - ga,
                &p.a + &p.b + &p.c,
            ),
            (
                "(1+alpha-beta-delta|q^2)_{a+b+d}",
                &one + al - be - de,
                &p.a + &p.b + &p.d,
            ),
            (
                "(1+alpha-gamma-delta|q^2)_{a+c+d}",
                &one + al - ga - de,
                &p.a + &p.c + &p.d,
            ),
        ],
        &q.squared(),
        ctx,
    )
}

/// The shifted template's closed form.
pub fn t2s_rhs(p: &T2Params, q: &QBase, ctx: &PrecisionContext) -> Result<BigReal> {
    let one = BigReal::one(ctx.working_prec());
    let two = &one + &one;
    let al = &p.alpha;
    let (be, ga, de) = (&p.beta, &p.gamma, &p.delta);
    let top = &two + al - be - ga - de;
    let sum4 = &p.a + &p.b + &p.c + &p.d - &one;
    gamma_poch_product(
        &[
            ("Gamma_{q^2}(1+alpha-beta)", &one + al - be),
            ("Gamma_{q^2}(1+alpha-gamma)", &one + al - ga),
            ("Gamma_{q^2}(1+alpha-delta)", &one + al - de),
            ("Gamma_{q^2}(2+alpha-beta-gamma-delta)", top.clone()),
        ],
        &[
            ("Gamma_{q^2}(alpha+1)", al + &one),
            ("Gamma_{q^2}(2+alpha-beta-gamma)", &two + al - be - ga),
            ("Gamma_{q^2}(2+alpha-beta-delta)", &two + al - be - de),
            ("Gamma_{q^2}(2+alpha-gamma-delta)", &two + al - ga - de),
        ],
        &[
            ("(beta|q^2)_{-b}", be.clone(), -&p.b),
            ("(gamma|q^2)_{-c}", ga.clone(), -&p.c),
            ("(delta|q^2)_{-d}", de.clone(), -&p.d),
            ("(2+alpha-beta-gamma-delta|q^2)_{a+b+c+d-1}", top, sum4),
        ],
        &[
            (
                "(2+alpha-beta-gamma|q^2)_{a+b+c-1}",
                &two + al - be - ga,
                &p.a + &p.b + &p.c - &one,
            ),
            (
                "(2+alpha-beta-delta|q^2)_{a+b+d-1}",
                &two + al - be - de,
                &p.a + &p.b + &p.d - &one,
            ),
            (
                "(2+alpha-gamma-delta|q^2)_{a+c+d-1}",
                &two + al - ga - de,
                &p.a + &p.c + &p.d - &one,
            ),
        ],
        &q.squared(),
        ctx,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::gauss_check;
    use crate::kernel::{pi_q, poch_general, q_gamma};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn big(c: &PrecisionContext, s: &str) -> BigReal {
        c.parse(s).unwrap()
    }

    fn t1(c: &PrecisionContext, v: [&str; 4]) -> T1Params {
        T1Params::new(big(c, v[0]), big(c, v[1]), big(c, v[2]), big(c, v[3])).unwrap()
    }

    fn t2(c: &PrecisionContext, g: [&str; 4], l: [&str; 4]) -> T2Params {
        T2Params::new(g.map(|s| big(c, s)), l.map(|s| big(c, s))).unwrap()
    }

    fn close(c: &PrecisionContext, x: &BigReal, y: &BigReal) -> bool {
        (x - y).abs() <= c.rel_tol_big() * y.abs()
    }

    #[test]
    fn t1_sides_agree() {
        let c = ctx();
        for (p, q) in [(["1/2", "0", "0", "1"], "0.6"), (["1/3", "0.2", "-0.1", "1.5"], "0.4")] {
            let q = QBase::parse(q, &c).unwrap();
            let p = t1(&c, p);
            let l = t1_lhs(&p, &q, &c).unwrap();
            let r = t1_rhs(&p, &q, &c).unwrap();
            assert!(l.converged);
            assert!(close(&c, &l.value, &r), "{} vs {}", l.value, r);
        }
    }

    #[test]
    fn t1_pole_is_reported() {
        let c = ctx();
        let q = QBase::parse("0.5", &c).unwrap();
        let p = t1(&c, ["1", "0", "0", "1"]);
        assert!(matches!(t1_lhs(&p, &q, &c), Err(QError::Pole(_))));
    }

    #[test]
    fn t1_requires_positive_excess() {
        let c = ctx();
        let err = T1Params::new(big(&c, "0.5"), c.big(1), c.big(1), c.big(2)).unwrap_err();
        assert!(matches!(err, QError::InvalidParams(m) if m.contains("c-a-b must be positive")));
    }

    #[test]
    fn t1_rhs_at_half_has_quarter_power_of_q() {
        let c = ctx();
        let q = QBase::parse("0.6", &c).unwrap();
        let q2 = q.squared();
        let half = c.ratio(1, 2);
        let (a, b, cc) = (big(&c, "0.25"), big(&c, "-0.3"), c.big(2));
        let p = T1Params::new(half.clone(), a.clone(), b.clone(), cc.clone()).unwrap();
        let want = poch_general(&half, &a, &q2, &c).unwrap()
            * poch_general(&half, &b, &q2, &c).unwrap()
            * q_gamma(&(&cc - &a - &b), &q2, &c).unwrap()
            / poch_general(&half, &(&cc - &a), &q2, &c).unwrap()
            / poch_general(&half, &(&cc - &b), &q2, &c).unwrap()
            * q.pow_ratio(1, 4)
            / pi_q(&q, &c).unwrap();
        assert!(close(&c, &t1_rhs(&p, &q, &c).unwrap(), &want));
    }

    #[test]
    fn t1_reduces_to_q_gauss() {
        // T1 = (α|Q)_a(1−α|Q)_b/Γ_Q(c+1) · ₂φ₁(Q^{a+α}, Q^{b+1−α}; Q^{c+1}; Q, Q^{c−a−b})
        let c = ctx();
        let q = QBase::parse("0.4", &c).unwrap();
        let q2 = q.squared();
        let one = c.big(1);
        let p = t1(&c, ["1/3", "0.2", "-0.1", "1.5"]);
        let out = gauss_check(
            &(p.a() + p.alpha()),
            &(p.b() + &one - p.alpha()),
            &(p.c() + &one),
            &q2,
            &c,
        )
        .unwrap();
        assert!(out.passed());
        let scale = poch_general(p.alpha(), p.a(), &q2, &c).unwrap()
            * poch_general(&(&one - p.alpha()), p.b(), &q2, &c).unwrap()
            / q_gamma(&(p.c() + &one), &q2, &c).unwrap();
        let via_gauss = out.rhs.unwrap() * scale;
        assert!(close(&c, &t1_rhs(&p, &q, &c).unwrap(), &via_gauss));
    }

    #[test]
    fn t1_partial_sums_are_monotone() {
        let c = ctx();
        let q = QBase::parse("0.7", &c).unwrap();
        let p = t1(&c, ["1/2", "0", "0", "1"]);
        let total = t1_lhs(&p, &q, &c).unwrap();
        let (series, _) = t1_series(&p, &q, &c).unwrap();
        let mut partial = c.big(0);
        let cap = &total.value + &total.tail_bound;
        for t in series.terms(200).unwrap() {
            assert!(t.is_positive());
            let next = &partial + &t;
            assert!(next >= partial);
            assert!(next <= cap);
            partial = next;
        }
    }

    #[test]
    fn t2_sides_agree() {
        let c = ctx();
        let cases = [
            (["1/2", "1/2", "1/3", "2/3"], ["1", "0", "0", "0"], "0.5"),
            (["0.7", "0.3", "0.2", "0.45"], ["0.3", "0.15", "0.25", "0.1"], "0.35"),
        ];
        for (g, l, q) in cases {
            let q = QBase::parse(q, &c).unwrap();
            let p = t2(&c, g, l);
            let lhs = t2_lhs(&p, &q, &c).unwrap();
            let rhs = t2_rhs(&p, &q, &c).unwrap();
            assert!(close(&c, &lhs.value, &rhs), "{} vs {}", lhs.value, rhs);
        }
    }

    #[test]
    fn t2_exponent_is_derived() {
        let c = ctx();
        let p = t2(&c, ["1/2", "1/2", "1/3", "2/3"], ["1", "0", "0", "0"]);
        // 2(1 + 1 + 1/2 − 1/2 − 1/3 − 2/3)
        assert!(close(&c, &p.big_a(), &c.big(2)));
    }

    #[test]
    fn t2_rejects_non_positive_exponent() {
        let c = ctx();
        let err = T2Params::new(
            ["0", "1/2", "1/2", "1/2"].map(|s| big(&c, s)),
            ["1/4", "1/4", "0", "0"].map(|s| big(&c, s)),
        )
        .unwrap_err();
        assert!(matches!(err, QError::InvalidParams(_)));
    }

    #[test]
    fn t2_rhs_pole_at_alpha_zero() {
        let c = ctx();
        let q = QBase::parse("0.5", &c).unwrap();
        let p = t2(&c, ["0", "1/2", "1/2", "1/2"], ["1", "0", "0", "0"]);
        match t2_rhs(&p, &q, &c) {
            Err(QError::Pole(m)) => assert!(m.contains("Gamma_{q^2}(alpha)")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shifted_template_sun_instance() {
        let c = ctx();
        let q = QBase::parse("0.5", &c).unwrap();
        let p = t2(&c, ["0", "1/2", "1/2", "1/2"], ["1", "0", "0", "0"]);
        let lhs = t2s_lhs(&p, &q, &c).unwrap();
        let rhs = t2s_rhs(&p, &q, &c).unwrap();
        let closed = pi_q(&q, &c).unwrap().square() / q.pow_ratio(1, 2);
        assert!(close(&c, &lhs.value, &rhs));
        assert!(close(&c, &rhs, &closed));
    }

    #[test]
    fn shifted_template_other_instance() {
        let c = ctx();
        let q = QBase::parse("0.3", &c).unwrap();
        let p = t2(&c, ["0", "1/2", "1/2", "1/2"], ["1", "1", "1", "0"]);
        let lhs = t2s_lhs(&p, &q, &c).unwrap();
        assert!(close(&c, &lhs.value, &t2s_rhs(&p, &q, &c).unwrap()));
    }
}
