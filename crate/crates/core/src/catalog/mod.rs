//! Identity records: the built-in catalog, user catalog files, and the
//! evaluators that turn a record into numbers.

mod eval;
mod format;
mod literal;
mod reduced;

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use crate::error::{QError, Result};
use crate::hyper::{T1Params, T2Params};
use crate::numeric::{format_exact, BigReal, PrecisionContext};

pub use eval::{closed_form_split, evaluate_lhs, evaluate_sides, sibling_lhs};
pub use format::{parse_catalog, serialize_catalog};
pub use literal::LiteralKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    TemplateT1,
    TemplateT2,
    TemplateT2S,
    Literal,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::TemplateT1 => "T1",
            Form::TemplateT2 => "T2",
            Form::TemplateT2S => "T2S",
            Form::Literal => "LITERAL",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "T1" => Ok(Form::TemplateT1),
            "T2" => Ok(Form::TemplateT2),
            "T2S" => Ok(Form::TemplateT2S),
            "LITERAL" => Ok(Form::Literal),
            other => Err(format!("unknown form '{other}' (expected T1, T2, T2S or LITERAL)")),
        }
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

fn to_big(r: &Rational, ctx: &PrecisionContext) -> BigReal {
    BigReal::from_rational(r, ctx.working_prec())
}

/// Exact parameters of the first template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T1Exact {
    pub alpha: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl T1Exact {
    pub const NAMES: [&'static str; 4] = ["alpha", "a", "b", "c"];

    pub fn validate(&self) -> Result<()> {
        let s = Rational::from(&self.c - &self.a) - &self.b;
        if s <= 0 {
            return Err(QError::InvalidParams(format!(
                "c-a-b must be positive, got {}",
                format_exact(&s)
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> [&Rational; 4] {
        [&self.alpha, &self.a, &self.b, &self.c]
    }

    pub fn to_params(&self, ctx: &PrecisionContext) -> Result<T1Params> {
        let [alpha, a, b, c] = self.values().map(|r| to_big(r, ctx));
        T1Params::new(alpha, a, b, c)
    }
}

/// Exact parameters of the second template and its shifted variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Exact {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl T2Exact {
    pub const NAMES: [&'static str; 8] = ["alpha", "beta", "gamma", "delta", "a", "b", "c", "d"];

    pub fn new(greek: [Rational; 4], latin: [Rational; 4]) -> Self {
        let [alpha, beta, gamma, delta] = greek;
        let [a, b, c, d] = latin;
        T2Exact {
            alpha,
            beta,
            gamma,
            delta,
            a,
            b,
            c,
            d,
        }
    }

    pub fn values(&self) -> [&Rational; 8] {
        [
            &self.alpha,
            &self.beta,
            &self.gamma,
            &self.delta,
            &self.a,
            &self.b,
            &self.c,
            &self.d,
        ]
    }

    pub fn greek(&self) -> [&Rational; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn validate(&self) -> Result<()> {
        let s = Rational::from(&self.a + &self.b) + &self.c + &self.d + 1u32 + &self.alpha
            - &self.beta
            - &self.gamma
            - &self.delta;
        if s <= 0 {
            return Err(QError::InvalidParams(format!(
                "a+b+c+d+1+alpha-beta-gamma-delta must be positive, got {}",
                format_exact(&s)
            )));
        }
        Ok(())
    }

    pub fn to_params(&self, ctx: &PrecisionContext) -> Result<T2Params> {
        let v = self.values().map(|r| to_big(r, ctx));
        let [al, be, ga, de, a, b, c, d] = v;
        T2Params::new([al, be, ga, de], [a, b, c, d])
    }
}

/// What a record evaluates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    T1(T1Exact),
    T2(T2Exact),
    T2S(T2Exact),
    Literal(LiteralKey),
}

impl Binding {
    pub fn form(&self) -> Form {
        match self {
            Binding::T1(_) => Form::TemplateT1,
            Binding::T2(_) => Form::TemplateT2,
            Binding::T2S(_) => Form::TemplateT2S,
            Binding::Literal(_) => Form::Literal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Binding::T1(p) => p.validate(),
            Binding::T2(p) | Binding::T2S(p) => p.validate(),
            Binding::Literal(_) => Ok(()),
        }
    }
}

/// A classical constant r·(√3)^s·π^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalTarget {
    pub coefficient: Rational,
    pub sqrt3: bool,
    pub pi_power: i32,
    /// The classical statement the constant comes from.
    pub source: String,
}

impl ClassicalTarget {
    pub fn new(coefficient: Rational, sqrt3: bool, pi_power: i32, source: &str) -> Self {
        ClassicalTarget {
            coefficient,
            sqrt3,
            pi_power,
            source: source.to_string(),
        }
    }

    /// r·(√3)^s, the target with its power of π removed.
    pub fn coefficient_value(&self, prec: u32) -> BigReal {
        let r = BigReal::from_rational(&self.coefficient, prec);
        if self.sqrt3 {
            r * BigReal::from_i64(3, prec).sqrt().expect("3 is positive")
        } else {
            r
        }
    }

    /// Evaluated with MPFR's π, never with the q-analogue.
    pub fn value(&self, prec: u32) -> BigReal {
        self.coefficient_value(prec) * BigReal::pi(prec).powi(self.pi_power as i64)
    }

    /// Text form `r[*sqrt3][*pi^e]`, e.g. `1/6*sqrt3*pi^-1`.
    pub fn expression(&self) -> String {
        let mut s = format_exact(&self.coefficient);
        if self.sqrt3 {
            s.push_str("*sqrt3");
        }
        if self.pi_power != 0 {
            s.push_str(&format!("*pi^{}", self.pi_power));
        }
        s
    }

    pub fn parse_expression(text: &str) -> std::result::Result<Self, String> {
        let mut coefficient = Rational::from(1);
        let mut sqrt3 = false;
        let mut pi_power = 0i32;
        for factor in text.split('*') {
            let f = factor.trim();
            if f == "sqrt3" {
                if sqrt3 {
                    return Err("sqrt3 given twice".into());
                }
                sqrt3 = true;
            } else if f == "pi" {
                pi_power += 1;
            } else if let Some(e) = f.strip_prefix("pi^") {
                pi_power += e.parse::<i32>().map_err(|_| format!("bad power of pi '{f}'"))?;
            } else {
                coefficient *= crate::numeric::parse_exact(f)?;
            }
        }
        if !matches!(pi_power, -2..=2) {
            return Err(format!("power of pi {pi_power} outside -2..2"));
        }
        Ok(ClassicalTarget {
            coefficient,
            sqrt3,
            pi_power,
            source: String::new(),
        })
    }
}

impl fmt::Display for ClassicalTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expression())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRecord {
    pub id: String,
    pub description: String,
    pub binding: Binding,
    pub limit_target: Option<ClassicalTarget>,
    /// Instances outside the displayed set, shipped for coverage only.
    pub exploratory: bool,
}

impl IdentityRecord {
    pub fn form(&self) -> Form {
        self.binding.form()
    }

    /// Every record here is valid for all q in (0, 1).
    pub fn valid_for(&self, q: &BigReal) -> bool {
        q.is_positive() && *q < 1
    }
}

fn record(id: &str, description: &str, binding: Binding, target: Option<ClassicalTarget>) -> IdentityRecord {
    IdentityRecord {
        id: id.to_string(),
        description: description.to_string(),
        binding,
        limit_target: target,
        exploratory: false,
    }
}

fn t1(alpha: Rational, a: i64, b: i64, c: i64) -> Binding {
    Binding::T1(T1Exact {
        alpha,
        a: a.into(),
        b: b.into(),
        c: c.into(),
    })
}

fn greek_t31() -> [Rational; 4] {
    [q(1, 2), q(1, 2), q(1, 3), q(2, 3)]
}

fn greek_t41() -> [Rational; 4] {
    [q(0, 1), q(1, 2), q(1, 2), q(1, 2)]
}

fn ints(v: [i64; 4]) -> [Rational; 4] {
    v.map(Rational::from)
}

/// The built-in records, in listing order.
pub fn builtin_catalog() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for l in 1..=4 {
        let target = match l {
            1 => Some(ClassicalTarget::new(
                q(4, 1),
                false,
                -1,
                "sum (1/2)_n^2/(n!(n+1)!) = 4/pi",
            )),
            2 => Some(ClassicalTarget::new(
                q(16, 9),
                false,
                -1,
                "sum (1/2)_n^2/(n!(n+2)!) = 16/(9pi)",
            )),
            _ => None,
        };
        out.push(record(
            &format!("T3_COR_L{l}"),
            &format!("first template at alpha=1/2, a=b=0, c={l}"),
            t1(q(1, 2), 0, 0, l),
            target,
        ));
    }
    for l in 0..=3 {
        let target = match l {
            0 => Some(ClassicalTarget::new(
                q(16, 1),
                false,
                -1,
                "5 + sum (1/2)_n^2/(n+1)!^2 = 16/pi",
            )),
            1 => Some(ClassicalTarget::new(q(256, 9), false, -1, "shifted series = 256/(9pi)")),
            _ => None,
        };
        out.push(record(
            &format!("T3_NEG_L{l}"),
            &format!("first template at alpha=1/2, a=b=-1, c={l}"),
            t1(q(1, 2), -1, -1, l),
            target,
        ));
    }
    out.push(record(
        "T3_LIT_L0",
        "q^2(1+q)^2 + q^4 + sum (1/2|q^2)_n^2/[n+1]!^2 q^(4n+4) = (1+q)^4 q^(9/4)/pi_q",
        Binding::Literal(LiteralKey::T3LitL0),
        Some(ClassicalTarget::new(
            q(16, 1),
            false,
            -1,
            "5 + sum (1/2)_n^2/(n+1)!^2 = 16/pi",
        )),
    ));
    out.push(record(
        "T3_LIT_L1",
        "split-head form of the a=b=-1, c=1 series, summand exponent q^(6n+6)",
        Binding::Literal(LiteralKey::T3LitL1),
        None,
    ));
    out.push(record(
        "T31_MAIN",
        "second template at (1/2,1/2,1/3,2/3), generic a,b,c,d",
        Binding::T2(T2Exact::new(greek_t31(), [q(3, 10), q(1, 5), q(1, 10), q(2, 5)])),
        None,
    ));
    out.push(record(
        "T31_EX1",
        "second template at (1/2,1/2,1/3,2/3), (a,b,c,d)=(1,0,0,0)",
        Binding::T2(T2Exact::new(greek_t31(), ints([1, 0, 0, 0]))),
        Some(ClassicalTarget::new(q(1, 6), true, -1, "sum = sqrt3/(6pi)")),
    ));
    out.push(record(
        "T31_EX2",
        "rearranged (a,b,c,d)=(0,0,0,1) instance with its n=0 term split off",
        Binding::Literal(LiteralKey::T31Ex2),
        Some(ClassicalTarget::new(
            q(5, 3),
            true,
            -1,
            "1 - (5/18) sum ... = 5/(sqrt3 pi)",
        )),
    ));
    out.push(record(
        "T41_MAIN",
        "shifted second template at (0,1/2,1/2,1/2), generic a,b,c,d",
        Binding::T2S(T2Exact::new(greek_t41(), [q(7, 10), q(1, 5), q(3, 10), q(1, 10)])),
        None,
    ));
    out.push(record(
        "T41_SUN",
        "sum (1+q^(2n+1)) q^n/(1-q^(2n+1))^2 = pi_q^2/((1-q^2)^2 q^(1/2))",
        Binding::Literal(LiteralKey::T41Sun),
        Some(ClassicalTarget::new(q(1, 8), false, 2, "sum 1/(2n+1)^2 = pi^2/8")),
    ));
    out.push(record(
        "T41_EX2",
        "shifted second template at (0,1/2,1/2,1/2), (a,b,c,d)=(1,1,1,0)",
        Binding::T2S(T2Exact::new(greek_t41(), ints([1, 1, 1, 0]))),
        Some(ClassicalTarget::new(q(3, 256), false, 2, "sum = 3pi^2/256")),
    ));
    out.push(record(
        "T41_EX3",
        "(a,b,c,d)=(1,1,1,1) instance with its n=0 term split off",
        Binding::Literal(LiteralKey::T41Ex3),
        Some(ClassicalTarget::new(q(15, 4096), false, 2, "sum = 15pi^2/4096")),
    ));
    out.push(record(
        "GAUSS_CHK",
        "q-Gauss summation at q-exponents (0.6, 0.8, 2.0)",
        Binding::Literal(LiteralKey::Gauss),
        None,
    ));
    out.push(record(
        "PHI65_CHK",
        "very-well-poised 6phi5 summation at q-exponents (2.0, 0.7, 0.8, 0.9)",
        Binding::Literal(LiteralKey::Phi65),
        None,
    ));
    let mut a13 = record(
        "T1_EXP_A13",
        "first template at alpha=1/3, a=1/5, b=-1/10, c=3/2",
        Binding::T1(T1Exact {
            alpha: q(1, 3),
            a: q(1, 5),
            b: q(-1, 10),
            c: q(3, 2),
        }),
        None,
    );
    a13.exploratory = true;
    out.push(a13);
    let mut a14 = record(
        "T1_EXP_A14",
        "first template at alpha=1/4, a=b=0, c=1",
        t1(q(1, 4), 0, 0, 1),
        None,
    );
    a14.exploratory = true;
    out.push(a14);
    out
}

pub fn lookup<'a>(records: &'a [IdentityRecord], id: &str) -> Option<&'a IdentityRecord> {
    records.iter().find(|r| r.id == id)
}
