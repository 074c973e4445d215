//! Scalar abstraction shared by the geometry and measure code.
//!
//! Everything that decides a predicate or reports a measure runs on
//! [`Rational`](crate::Rational). The geometry is nevertheless written against
//! [`Scalar`] so the same code can be driven with `f64` (Monte-Carlo checks,
//! rendering) or with machine-word rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::Error;

pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static {
    /// `true` when arithmetic on this type is exact.
    const EXACT: bool;

    /// Exact value, if the type can represent one.
    fn to_exact(&self) -> Option<BigRational>;

    fn from_exact(value: &BigRational) -> Self;

    fn approx(&self) -> f64;

    /// Text form used in JSON: `"p/q"`, or `"p"` when `q = 1`.
    fn to_text(&self) -> String;

    fn parse_text(text: &str) -> Result<Self, Error>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer conversion") / Self::from_i64(den).expect("integer conversion")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn to_exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_exact(value: &BigRational) -> Self {
        value.clone()
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn to_text(&self) -> String {
        rational_text(self.numer(), self.denom())
    }

    fn parse_text(text: &str) -> Result<Self, Error> {
        parse_rational(text)
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn to_exact(&self) -> Option<BigRational> {
        Some(BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom())))
    }

    fn from_exact(value: &BigRational) -> Self {
        let num = value.numer().to_i64().expect("numerator fits in i64");
        let den = value.denom().to_i64().expect("denominator fits in i64");
        Ratio::new(num, den)
    }

    fn approx(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn to_text(&self) -> String {
        rational_text(&BigInt::from(*self.numer()), &BigInt::from(*self.denom()))
    }

    fn parse_text(text: &str) -> Result<Self, Error> {
        let exact = parse_rational(text)?;
        match (exact.numer().to_i64(), exact.denom().to_i64()) {
            (Some(n), Some(d)) => Ok(Ratio::new(n, d)),
            _ => Err(Error::Parse(format!("`{text}` does not fit in a 64-bit rational"))),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_exact(&self) -> Option<BigRational> {
        None
    }

    fn from_exact(value: &BigRational) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }

    fn approx(&self) -> f64 {
        *self
    }

    fn to_text(&self) -> String {
        format!("{self}")
    }

    fn parse_text(text: &str) -> Result<Self, Error> {
        if let Ok(v) = text.trim().parse::<f64>() {
            return Ok(v);
        }
        parse_rational(text).map(|r| r.approx())
    }
}

fn rational_text(num: &BigInt, den: &BigInt) -> String {
    if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.125"`.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational number"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("`{text}` has a zero denominator")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = whole.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    let num: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(num))
}

/// `num · 2^{-exp}` as an exact rational.
pub fn dyadic(num: i64, exp: u32) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::one() << exp as usize)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Decimal expansion of `value^(1/p)` truncated (not rounded) to `digits`
/// fractional digits, for positive `value` and rational `p > 0`.
pub fn decimal_root(value: &BigRational, p: &BigRational, digits: u32) -> String {
    assert!(value.is_positive() && p.is_positive());
    // value^(1/p) = (value^b)^(1/a) with p = a/b.
    let a = p.numer().to_u32().expect("small exponent numerator");
    let b = p.denom().to_u32().expect("small exponent denominator");
    decimal_nth_root(&pow(value, b), a, digits)
}

/// Decimal expansion of `value^(1/n)` truncated to `digits` fractional digits.
pub fn decimal_nth_root(value: &BigRational, n: u32, digits: u32) -> String {
    assert!(!value.is_negative() && n > 0);
    let scale = BigInt::from(10u32).pow(digits * n);
    let root = (value.numer() * scale / value.denom()).nth_root(n);
    let text = root.to_string();
    let d = digits as usize;
    let (int_part, frac_part) = if text.len() > d {
        let split = text.len() - d;
        (text[..split].to_string(), text[split..].to_string())
    } else {
        ("0".to_string(), format!("{text:0>d$}"))
    };
    if d == 0 {
        int_part
    } else {
        format!("{int_part}.{frac_part}")
    }
}

pub fn pow(value: &BigRational, e: u32) -> BigRational {
    BigRational::new(value.numer().pow(e), value.denom().pow(e))
}

/// Serde adapter writing scalars as text (`"p/q"`).
pub mod text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Scalar;

    pub fn serialize<T: Scalar, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_text())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let raw = String::deserialize(d)?;
        T::parse_text(&raw).map_err(serde::de::Error::custom)
    }
}
