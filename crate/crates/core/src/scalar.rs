//! Numeric field abstraction shared by every computation in the crate.
//!
//! Everything that touches probabilities is generic over [`Scalar`], so the
//! same code runs in floating point (fast, used for bootstrap and plotting)
//! and in exact rational arithmetic (used to certify bounds against the LP).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub use crate::rational::Rational;

/// Arithmetic mode selector used by the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Rational,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Mode::Float),
            "rational" => Ok(Mode::Rational),
            other => Err(format!("unknown arithmetic mode `{other}` (expected rational|float)")),
        }
    }
}

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Send + Sync + 'static + Num + Signed + FromPrimitive + ToPrimitive
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Tolerance for equality checks in criterion evaluation (0 when exact).
    fn default_tol() -> Self;

    /// Threshold below which a pivot or reduced cost is treated as zero.
    fn lp_eps() -> Self;

    /// Parses `"3/40"`, `"0.075"`, `"1e-3"` or an integer. Rationals parse
    /// decimals exactly.
    fn parse_decimal(s: &str) -> Option<Self>;

    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::String(s) => Self::parse_decimal(s),
            serde_json::Value::Number(n) => Self::parse_decimal(&n.to_string()),
            _ => None,
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

/// Sum of an iterator of scalars.
pub fn sum<T: Scalar, I: IntoIterator<Item = T>>(it: I) -> T {
    it.into_iter().fold(T::zero(), |acc, x| acc + x)
}

pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

pub fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// |a - b| <= tol
pub fn approx_eq<T: Scalar>(a: &T, b: &T, tol: &T) -> bool {
    (a.clone() - b.clone()).abs() <= *tol
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn default_tol() -> Self {
        1e-9
    }

    fn lp_eps() -> Self {
        1e-11
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            return if d == 0.0 { None } else { Some(n / d) };
        }
        s.parse().ok().filter(|x: &f64| x.is_finite())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }

    fn default_tol() -> Self {
        Self::zero()
    }

    fn lp_eps() -> Self {
        Self::zero()
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        parse_exact(s.trim())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

fn parse_exact(s: &str) -> Option<Rational> {
    parse_big(s).map(Rational::from_big)
}

fn parse_big(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_big(n.trim())?;
        let d = parse_big(d.trim())?;
        return if d.is_zero() { None } else { Some(n / d) };
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = BigRational::from_integer(numer);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Converts a value between scalar types, going through an exact rational
/// representation when the target is exact.
pub fn convert<A: Scalar, B: Scalar>(a: &A) -> B {
    if A::EXACT && B::EXACT {
        B::parse_decimal(&a.to_string()).expect("rational display round-trips")
    } else if B::EXACT {
        let r = Rational::from_float(a.to_f64_lossy()).expect("finite float");
        B::parse_decimal(&r.to_string()).expect("rational display round-trips")
    } else {
        B::from_f64(a.to_f64_lossy()).expect("finite float")
    }
}
