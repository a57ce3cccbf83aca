//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Lie-algebra arithmetic (brackets, adjoint series, BCH) only needs ring
//! operations plus multiplication by rational constants, so it is written
//! against [`Scalar`]. Anything that branches on "is this entry zero" or
//! divides (echelon forms, kernels, the index algorithm) needs an exact
//! field and is written against [`ExactField`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Commutative ring elements that can absorb rational constants.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }
}

/// A field in which `is_zero` is a decision procedure (no rounding).
pub trait ExactField: Scalar + Div<Output = Self> {}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl ExactField for Rational {}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn from_int(v: i64) -> Self {
        v as f32
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let mut n = BigInt::from_str(&digits).map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Parses a comma-separated list of rationals, e.g. `"0,1/2,-3"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// Canonical `"p/q"` text, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn abs_rational(r: &Rational) -> Rational {
    r.abs()
}

/// `1 / k!` as an exact rational.
pub fn inverse_factorial(k: usize) -> Rational {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    Rational::new(BigInt::one(), f)
}

/// Solves `slope * t + offset = target` exactly.
pub fn solve_affine<F: ExactField>(slope: &F, offset: &F, target: &F) -> Result<F> {
    if slope.is_zero() {
        return Err(Error::ZeroSlope);
    }
    Ok((target.clone() - offset.clone()) / slope.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_in_all_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn rationals_format_canonically() {
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-2, 6)), "-1/3");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn affine_solves() {
        assert_eq!(solve_affine(&int(1), &int(0), &int(5)).unwrap(), int(5));
        assert_eq!(solve_affine(&int(2), &int(1), &int(0)).unwrap(), rat(-1, 2));
        assert_eq!(solve_affine(&int(0), &int(1), &int(0)), Err(Error::ZeroSlope));
    }

    #[test]
    fn inverse_factorials() {
        assert_eq!(inverse_factorial(0), int(1));
        assert_eq!(inverse_factorial(4), rat(1, 24));
    }
}
