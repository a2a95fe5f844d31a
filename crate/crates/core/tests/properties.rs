use proptest::prelude::*;
use rug::Rational;

use qident_core::catalog::{builtin_catalog, parse_catalog, serialize_catalog, T1Exact, T2Exact};
use qident_core::catalog::{Binding, IdentityRecord};
use qident_core::hyper::{t1_lhs, t1_rhs, t1_series, t2_lhs, t2_rhs, t2s_lhs, t2s_rhs, T1Params, T2Params};
use qident_core::kernel::{poch_finite, poch_general, poch_infinite, q_gamma, q_int, reflection_residual, sin_q};
use qident_core::outcome::evaluation_ctx;
use qident_core::verify::verify;
use qident_core::{BigReal, PrecisionContext, QBase, QError, Status, VerificationOutcome};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn big(v: f64) -> BigReal {
    BigReal::from_f64(v, ctx().working_prec())
}

fn base(v: f64) -> QBase {
    QBase::new(big(v)).unwrap()
}

fn rel(a: &BigReal, b: &BigReal) -> f64 {
    ((a - b).abs() / b.abs()).to_f64()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

/// Pole hits and failed preconditions are outside the property's domain.
fn admissible<T>(r: Result<T, QError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(QError::Pole(_) | QError::Domain(_) | QError::InvalidParams(_)) => None,
        Err(e) => panic!("unexpected error {e}"),
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn shift_law(x in 0.05f64..4.0, q in 0.05f64..0.95) {
        let (c, q, x) = (ctx(), base(q), big(x));
        let lhs = q_gamma(&(&x + 1i64), &q, &c).unwrap();
        let rhs = q_int(&x, &q) * q_gamma(&x, &q, &c).unwrap();
        prop_assert!(rel(&lhs, &rhs) <= c.rel_tol());
    }

    #[test]
    fn pochhammer_gamma_consistency(x in 0.05f64..3.0, n in 0u64..12, q in 0.05f64..0.95) {
        let (c, q, x) = (ctx(), base(q), big(x));
        let one = BigReal::one(c.working_prec());
        let lhs = poch_finite(&q.pow(&x), &q, n) / (&one - q.value()).powi(n as i64);
        let rhs = q_gamma(&(&x + n as i64), &q, &c).unwrap() / q_gamma(&x, &q, &c).unwrap();
        prop_assert!(rel(&lhs, &rhs) <= c.rel_tol());
    }

    #[test]
    fn inverse_law(x in -3.0f64..5.0, n in 1i64..6, q in 0.05f64..0.95) {
        let (c, q, x) = (ctx(), base(q), big(x));
        let nb = BigReal::from_i64(n, c.working_prec());
        let down = admissible(poch_general(&x, &-&nb, &q, &c));
        let up = admissible(poch_general(&(&x - &nb), &nb, &q, &c));
        if let (Some(d), Some(u)) = (down, up) {
            let p = d * u;
            prop_assert!((p - 1i64).abs().to_f64() <= c.rel_tol());
        }
    }

    #[test]
    fn integer_order_matches_gamma_ratio(x in 0.05f64..4.0, n in 0i64..10, q in 0.05f64..0.95) {
        let (c, q, x) = (ctx(), base(q), big(x));
        let nb = BigReal::from_i64(n, c.working_prec());
        let fast = poch_general(&x, &nb, &q, &c).unwrap();
        let ratio = q_gamma(&(&x + &nb), &q, &c).unwrap() / q_gamma(&x, &q, &c).unwrap();
        prop_assert!(rel(&fast, &ratio) <= c.rel_tol());
    }

    #[test]
    fn sin_q_symmetry(x in 0.01f64..0.99, q in 0.05f64..0.95) {
        let (c, q, x) = (ctx(), base(q), big(x));
        let a = sin_q(&x, &q, &c).unwrap();
        let b = sin_q(&(BigReal::one(c.working_prec()) - &x), &q, &c).unwrap();
        prop_assert!(rel(&a, &b) <= c.rel_tol());
    }

    #[test]
    fn reflection(x in 0.01f64..0.99, q in 0.05f64..0.9) {
        let (c, q, x) = (ctx(), base(q), big(x));
        let q2 = q.squared();
        let one = BigReal::one(c.working_prec());
        let scale = q_gamma(&x, &q2, &c).unwrap() * q_gamma(&(&one - &x), &q2, &c).unwrap();
        let r = reflection_residual(&x, &q, &c).unwrap();
        prop_assert!((r.abs() / scale.abs()).to_f64() <= c.rel_tol());
    }

    #[test]
    fn product_refinement(z in -0.95f64..0.95, r in 0.05f64..0.9) {
        let c = ctx();
        let fine = c.with_precision_bits(512).unwrap().with_rel_tol(c.rel_tol() / 2.0).unwrap();
        let q = base(r);
        let coarse_v = poch_infinite(&big(z), &q, &c).unwrap().value;
        let fine_v = poch_infinite(&big(z), &q, &fine).unwrap().value;
        prop_assert!(rel(&coarse_v, &fine_v) <= c.rel_tol());
    }

    #[test]
    fn t1_sides_agree(alpha in 0.1f64..0.9, a in -0.3f64..0.6, b in -0.3f64..0.6, gap in 0.2f64..2.5, q in 0.1f64..0.8) {
        let c = ctx();
        let inner = evaluation_ctx(&c);
        let Some(p) = admissible(T1Params::new(big(alpha), big(a), big(b), big(a + b + gap))) else { return Ok(()) };
        let q = base(q);
        let (Some(l), Some(r)) = (admissible(t1_lhs(&p, &q, &inner)), admissible(t1_rhs(&p, &q, &inner))) else {
            return Ok(());
        };
        prop_assert!(rel(&l.value, &r) <= c.rel_tol(), "rel {}", rel(&l.value, &r));
    }

    #[test]
    fn t2_sides_agree(
        greek in prop::array::uniform4(0.15f64..0.85),
        latin in prop::array::uniform4(-0.3f64..0.8),
        shifted in any::<bool>(),
        q in 0.1f64..0.7,
    ) {
        let c = ctx();
        let inner = evaluation_ctx(&c);
        let Some(p) = admissible(T2Params::new(greek.map(big), latin.map(big))) else { return Ok(()) };
        let q = base(q);
        let sides = if shifted {
            (admissible(t2s_lhs(&p, &q, &inner)), admissible(t2s_rhs(&p, &q, &inner)))
        } else {
            (admissible(t2_lhs(&p, &q, &inner)), admissible(t2_rhs(&p, &q, &inner)))
        };
        let (Some(l), Some(r)) = sides else { return Ok(()) };
        prop_assume!(l.converged);
        prop_assert!(rel(&l.value, &r) <= c.rel_tol(), "rel {}", rel(&l.value, &r));
    }

    #[test]
    fn t1_partial_sums_are_monotone(alpha in 0.1f64..0.9, a in 0.0f64..0.8, b in 0.0f64..0.8, gap in 0.2f64..2.0, q in 0.1f64..0.8) {
        let c = ctx();
        let p = T1Params::new(big(alpha), big(a), big(b), big(a + b + gap)).unwrap();
        let q = base(q);
        let total = t1_lhs(&p, &q, &c).unwrap();
        let (series, _) = t1_series(&p, &q, &c).unwrap();
        let cap = &total.value + &total.tail_bound;
        let mut partial = BigReal::zero(c.working_prec());
        for t in series.terms(200).unwrap() {
            let next = &partial + &t;
            prop_assert!(next >= partial);
            prop_assert!(next <= cap);
            partial = next;
        }
    }

    #[test]
    fn verification_is_deterministic(idx in 0usize..21, q in 0.1f64..0.9) {
        let cat = builtin_catalog();
        let r = &cat[idx % cat.len()];
        let q = base(q);
        prop_assert_eq!(verify(r, &q, &ctx()), verify(r, &q, &ctx()));
    }

    #[test]
    fn tolerance_monotonicity(idx in 0usize..21, q in 0.1f64..0.9, loosen in 1.0f64..1e6) {
        let cat = builtin_catalog();
        let r = &cat[idx % cat.len()];
        let q = base(q);
        let c = ctx();
        let out = verify(r, &q, &c);
        if out.status == Status::Pass {
            let loose = c.with_rel_tol(c.rel_tol() * loosen).unwrap();
            let (lhs, rhs) = qident_core::catalog::evaluate_sides(r, &q, &evaluation_ctx(&c)).unwrap();
            let again = VerificationOutcome::judge(&r.id, q.value(), &lhs, &rhs, &loose);
            prop_assert_eq!(again.status, Status::Pass);
        }
    }

    #[test]
    fn catalog_round_trip(
        t1 in prop::collection::vec(prop::array::uniform4((-40i64..40, 1i64..12)), 0..4),
        t2 in prop::collection::vec(prop::array::uniform8((-40i64..40, 1i64..12)), 0..4),
        desc in "[ -~]{0,20}",
    ) {
        let r = |(n, d): (i64, i64)| Rational::from((n, d));
        let mut records: Vec<IdentityRecord> = Vec::new();
        for (i, v) in t1.into_iter().enumerate() {
            let [alpha, a, b, c] = v.map(r);
            let binding = Binding::T1(T1Exact { alpha, a, b, c });
            if binding.validate().is_ok() {
                records.push(IdentityRecord { id: format!("A{i}"), description: desc.clone(), binding, limit_target: None, exploratory: i % 2 == 0 });
            }
        }
        for (i, v) in t2.into_iter().enumerate() {
            let v = v.map(r);
            let [g0, g1, g2, g3, l0, l1, l2, l3] = v;
            let p = T2Exact::new([g0, g1, g2, g3], [l0, l1, l2, l3]);
            let binding = if i % 2 == 0 { Binding::T2(p) } else { Binding::T2S(p) };
            if binding.validate().is_ok() {
                records.push(IdentityRecord { id: format!("B{i}"), description: String::new(), binding, limit_target: None, exploratory: false });
            }
        }
        let text = serialize_catalog(&records);
        prop_assert_eq!(parse_catalog(&text).unwrap(), records);
    }
}
