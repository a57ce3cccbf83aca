//! Quotients of multivariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{ExactField, Rational, Scalar};

/// `numerator / denominator`, normalized so the denominator is an integral
/// primitive polynomial with positive leading coefficient. Common monomial
/// factors and exact polynomial quotients are cancelled; equality is decided
/// by cross-multiplication, so it is exact even when a common factor survives.
#[derive(Clone, Debug)]
pub struct RatFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFunction { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn var(vars: &Arc<[String]>, index: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, index))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.num.depends_on(var) || self.den.depends_on(var)
    }

    /// Exact value at a point; fails when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Domain(format!("denominator {} vanishes", self.den)));
        }
        Ok(self.num.eval(point)? / d)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            let vars = self.num.vars().clone();
            self.num = MultiPoly::zero_in(&vars);
            self.den = MultiPoly::one();
            return;
        }
        let g = self.num.monomial_gcd().gcd(&self.den.monomial_gcd());
        if g.degree() > 0 {
            self.num = self.num.div_monomial(&g);
            self.den = self.den.div_monomial(&g);
        }
        if !self.den.is_constant() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = MultiPoly::one();
            } else if let Some(q) = self.den.div_exact(&self.num) {
                self.num = MultiPoly::one();
                self.den = q;
            }
        }
        let (_, lead) = self.den.leading().expect("nonzero denominator");
        let mut scale = self.den.content();
        if num_traits::Signed::is_negative(lead) {
            scale = -scale;
        }
        if !scale.is_one() {
            let inv = Rational::one() / scale;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }
}

impl PartialEq for RatFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl Add for RatFunction {
    type Output = RatFunction;

    fn add(self, rhs: RatFunction) -> RatFunction {
        if rhs.num.is_zero() {
            return self;
        }
        if self.num.is_zero() {
            return rhs;
        }
        if self.den == rhs.den {
            return RatFunction::new(self.num + rhs.num, self.den);
        }
        RatFunction::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Neg for RatFunction {
    type Output = RatFunction;

    fn neg(self) -> RatFunction {
        RatFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFunction {
    type Output = RatFunction;

    fn sub(self, rhs: RatFunction) -> RatFunction {
        self + (-rhs)
    }
}

impl Mul for RatFunction {
    type Output = RatFunction;

    fn mul(self, rhs: RatFunction) -> RatFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunction::from_poly(self.num * rhs.num);
        }
        RatFunction::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFunction {
    type Output = RatFunction;

    fn div(self, rhs: RatFunction) -> RatFunction {
        assert!(!rhs.num.is_zero(), "division by the zero rational function");
        RatFunction::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Zero for RatFunction {
    fn zero() -> Self {
        RatFunction::from_poly(MultiPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunction {
    fn one() -> Self {
        RatFunction::from_poly(MultiPoly::one())
    }
}

impl Scalar for RatFunction {
    fn from_rational(r: &Rational) -> Self {
        RatFunction::from_poly(MultiPoly::constant(r.clone()))
    }
}

impl ExactField for RatFunction {}

impl fmt::Display for RatFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &MultiPoly::ring(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        let a = RatFunction::new(p("2*x"), p("2*y"));
        let b = RatFunction::new(p("x"), p("y"));
        assert_eq!(a, b);
        assert_eq!(a.numerator(), b.numerator());
        assert_eq!(a.denominator(), b.denominator());

        let c = RatFunction::new(p("-x"), p("-3*y"));
        assert_eq!(c.numerator(), &p("1/3*x"));
        assert_eq!(c.denominator(), &p("y"));
    }

    #[test]
    fn exact_quotients_cancel() {
        let r = RatFunction::new(p("x^2 - y^2"), p("x - y"));
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &p("x + y"));
        let s = RatFunction::new(p("x*z"), p("x^2*y"));
        assert_eq!(s.numerator(), &p("z"));
        assert_eq!(s.denominator(), &p("x*y"));
    }

    #[test]
    fn field_arithmetic() {
        let a = RatFunction::new(p("1"), p("x"));
        let b = RatFunction::new(p("1"), p("y"));
        let sum = a.clone() + b.clone();
        assert_eq!(sum, RatFunction::new(p("x + y"), p("x*y")));
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert!((a.clone() - a.clone()).is_zero());
        assert_eq!(
            sum.eval(&[int(1), int(2), int(0)]).unwrap(),
            crate::scalar::rat(3, 2)
        );
        assert!(a.eval(&[int(0), int(1), int(1)]).is_err());
    }
}
