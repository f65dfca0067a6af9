//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Exact arithmetic runs over [`Rational`] (arbitrary precision); curve
//! sampling and the iterative solver run over `f64`. Algorithms are written
//! once against [`Scalar`] and instantiated for whichever carrier the caller
//! needs.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Ordered field element usable by the CRG calculus.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test used for pivoting and positivity checks. Exact carriers
    /// compare with zero; floating carriers use an absolute tolerance.
    fn is_negligible(&self) -> bool;

    fn is_strictly_positive(&self) -> bool {
        !self.is_negligible() && *self > Self::zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    /// Solves the square system given as augmented rows `[A | b]`; `None`
    /// when `A` is (numerically) singular.
    fn solve_augmented(a: Vec<Vec<Self>>) -> Option<Vec<Self>> {
        crate::linalg::gauss_jordan(a)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn solve_augmented(a: Vec<Vec<Self>>) -> Option<Vec<Self>> {
        crate::linalg::bareiss(&a)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-11
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f32(q).unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= 1e-5
    }
}

/// An edge probability / edge density in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Probability<S>(S);

impl<S: Scalar> Probability<S> {
    pub fn new(value: S) -> Result<Self> {
        if value < S::zero() || value > S::one() {
            return Err(Error::Probability(format!("{value:?}")));
        }
        Ok(Probability(value))
    }

    pub fn value(&self) -> &S {
        &self.0
    }

    pub fn into_inner(self) -> S {
        self.0
    }

    /// `1 - p`.
    pub fn complement(&self) -> S {
        S::one() - self.0.clone()
    }
}

impl Probability<Rational> {
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Number(format!("{num}/{den}")));
        }
        Self::new(Rational::from_ratio(num, den))
    }

    pub fn to_f64(&self) -> Probability<f64> {
        Probability(Scalar::to_f64(&self.0))
    }
}

impl FromStr for Probability<Rational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Probability::new(parse_rational(s)?)
    }
}

/// Parses `a/b`, an integer, or a decimal such as `0.35` or `2.5e-3` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Number(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if sign < 0 { -value } else { value })
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

pub(crate) fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
