//! Arbitrary-precision real scalar.
//!
//! `BigReal` is a thin newtype over an MPFR float. Binary operations produce a
//! result at the larger of the two operand precisions, so a computation that
//! starts from values created at the working precision stays there.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{QError, Result};

#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

impl BigReal {
    pub fn from_float(f: Float) -> Self {
        BigReal(f)
    }

    pub fn zero(prec: u32) -> Self {
        BigReal(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigReal(Float::with_val(prec, v))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        BigReal(Float::with_val(prec, v))
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        BigReal(Float::with_val(prec, r))
    }

    /// `num/den` rounded once to `prec` bits.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from((num, den)), prec)
    }

    /// Parses a decimal (`-1.25e-3`) or rational (`7/3`) literal exactly and
    /// rounds it once to `prec` bits.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let r = parse_exact(text).map_err(QError::Domain)?;
        Ok(Self::from_rational(&r, prec))
    }

    /// `2^exp` exactly.
    pub fn pow2(exp: i32, prec: u32) -> Self {
        BigReal(Float::with_val(prec, Float::i_exp(1, exp)))
    }

    pub fn pi(prec: u32) -> Self {
        BigReal(Float::with_val(prec, Constant::Pi))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_positive(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Less)
    }

    pub fn abs(&self) -> Self {
        BigReal(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    pub fn recip(&self) -> Self {
        BigReal(Float::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn square(&self) -> Self {
        BigReal(Float::with_val(self.prec(), self.0.square_ref()))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(QError::domain(format!("sqrt of negative value {}", self)));
        }
        Ok(BigReal(Float::with_val(self.prec(), self.0.sqrt_ref())))
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(QError::domain(format!("ln of non-positive value {}", self)));
        }
        Ok(BigReal(Float::with_val(self.prec(), self.0.ln_ref())))
    }

    pub fn exp(&self) -> Self {
        BigReal(Float::with_val(self.prec(), self.0.exp_ref()))
    }

    /// `self^y = exp(y ln self)`, defined for `self > 0` only.
    pub fn pow(&self, y: &BigReal) -> Result<Self> {
        if !self.is_positive() {
            return Err(QError::domain(format!("real power of non-positive base {}", self)));
        }
        let prec = self.prec().max(y.prec());
        Ok(BigReal(Float::with_val(prec, (&self.0).pow(&y.0))))
    }

    /// Integer power; any sign of base, negative exponents allowed.
    pub fn powi(&self, n: i64) -> Self {
        let n = Integer::from(n);
        BigReal(Float::with_val(self.prec(), (&self.0).pow(&n)))
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest integer, if it fits an `i64`.
    pub fn nearest_integer(&self) -> Option<i64> {
        let r = Float::with_val(self.prec(), self.0.round_ref());
        r.to_integer().and_then(|i| i.to_i64())
    }

    /// Distance to the nearest integer, together with that integer.
    pub fn integer_distance(&self) -> Option<(i64, BigReal)> {
        let n = self.nearest_integer()?;
        let d = (self - &BigReal::from_i64(n, self.prec())).abs();
        Some((n, d))
    }

    /// Scientific notation with `digits` significant digits, e.g.
    /// `1.2345678901234567890e-1`.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.0.is_nan() {
            return "nan".into();
        }
        if self.0.is_infinite() {
            return if self.is_negative() { "-inf" } else { "inf" }.into();
        }
        if self.is_zero() {
            let mut s = String::from("0.");
            s.push_str(&"0".repeat(digits.saturating_sub(1)));
            s.push_str("e0");
            return s;
        }
        let raw = self.0.to_string_radix(10, Some(digits));
        normalize_sci(&raw, digits)
    }
}

/// Rewrites MPFR's digit strings (`1.23`, `1.23e5`, `-4.0e-7`) into a single
/// canonical `d.ddd…e±x` form so reports are stable across formatting quirks.
fn normalize_sci(raw: &str, digits: usize) -> String {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    let all: String = int_part.chars().chain(frac_part.chars()).collect();
    let lead = all.find(|c: char| c != '0').unwrap_or(0);
    let sig = &all[lead..];
    let exp10 = exp + int_part.len() as i64 - 1 - lead as i64;
    let mut d: String = sig.chars().take(digits).collect();
    while d.len() < digits {
        d.push('0');
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&d[..1]);
    if digits > 1 {
        out.push('.');
        out.push_str(&d[1..]);
    }
    out.push('e');
    out.push_str(&exp10.to_string());
    out
}

/// Exact parse of `p/q`, integers and decimal literals with optional exponent.
pub fn parse_exact(text: &str) -> std::result::Result<Rational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = Integer::from_str(num.trim()).map_err(|_| format!("bad numerator in '{t}'"))?;
        let den = Integer::from_str(den.trim()).map_err(|_| format!("bad denominator in '{t}'"))?;
        if den == 0 {
            return Err(format!("zero denominator in '{t}'"));
        }
        return Ok(Rational::from((num, den)));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e = t[i + 1..]
                .parse::<i32>()
                .map_err(|_| format!("bad exponent in '{t}'"))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in '{t}'"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("not a number: '{t}'"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(Integer::from_str(&digits).map_err(|e| e.to_string())?);
    let scale = exp - frac_part.len() as i32;
    let factor = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Canonical text for an exact rational: `p` or `p/q`.
pub fn format_exact(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci(digits))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_sci(24))
    }
}

impl PartialEq<i32> for BigReal {
    fn eq(&self, other: &i32) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i32> for BigReal {
    fn partial_cmp(&self, other: &i32) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(Float::with_val(self.prec(), -&self.0))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let prec = self.prec().max(rhs.prec());
                BigReal(Float::with_val(prec, (&self.0).$method(&rhs.0)))
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<i64> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                self.$method(&BigReal::from_i64(rhs, self.prec()))
            }
        }
        impl $trait<i64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $assign_trait<&BigReal> for BigReal {
            fn $assign_method(&mut self, rhs: &BigReal) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_trait<BigReal> for BigReal {
            fn $assign_method(&mut self, rhs: BigReal) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_rationals_exactly() {
        assert_eq!(parse_exact("0.25").unwrap(), Rational::from((1, 4)));
        assert_eq!(parse_exact("-1/3").unwrap(), Rational::from((-1, 3)));
        assert_eq!(parse_exact("1e-3").unwrap(), Rational::from((1, 1000)));
        assert_eq!(parse_exact("2.5E2").unwrap(), Rational::from(250));
        assert_eq!(parse_exact(".5").unwrap(), Rational::from((1, 2)));
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("abc").is_err());
        assert!(parse_exact("").is_err());
    }

    #[test]
    fn sci_format_is_canonical() {
        let x = BigReal::ratio(1, 10, 128);
        assert_eq!(x.to_sci(20), "1.0000000000000000000e-1");
        let y = BigReal::from_i64(-1234, 128);
        assert_eq!(y.to_sci(5), "-1.2340e3");
        assert_eq!(BigReal::zero(64).to_sci(3), "0.00e0");
    }

    #[test]
    fn pow_requires_positive_base() {
        let two = BigReal::from_i64(2, 128);
        let half = BigReal::ratio(1, 2, 128);
        let r = two.pow(&half).unwrap();
        assert!((r.square() - 2i64).abs() < BigReal::pow2(-120, 128));
        assert!(BigReal::from_i64(-2, 128).pow(&half).is_err());
        assert!(BigReal::zero(128).pow(&half).is_err());
    }

    #[test]
    fn integer_distance() {
        let x = BigReal::parse("-2.0000001", 128).unwrap();
        let (n, d) = x.integer_distance().unwrap();
        assert_eq!(n, -2);
        assert!((d - BigReal::parse("1e-7", 128).unwrap()).abs() < BigReal::pow2(-100, 128));
    }
}
