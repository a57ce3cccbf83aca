//! Sparse multivariate polynomials with rational coefficients.
//!
//! Monomials are exponent vectors with trailing zeros stripped, ordered
//! graded-lexicographically (`x1 > x2 > ...` within a degree). A polynomial
//! with an empty variable list is a constant and combines with any ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Exponent vector without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    fn divides(&self, other: &Self) -> bool {
        (0..self.0.len()).all(|i| self.exponent(i) <= other.exponent(i))
    }

    fn div(&self, other: &Self) -> Self {
        let n = self.0.len();
        Monomial::new((0..n).map(|i| self.exponent(i) - other.exponent(i)).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let n = self.0.len().min(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i).min(other.exponent(i))).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            (0..n)
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over the rationals in a named, ordered list of variables.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

fn unify_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() || Arc::ptr_eq(a, b) || a == b {
        return a.clone();
    }
    panic!("polynomials over different variable lists: {a:?} vs {b:?}");
}

impl MultiPoly {
    pub fn ring(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
    }

    /// Variable list `prefix1..prefixN`.
    pub fn numbered_ring(prefix: &str, n: usize) -> Arc<[String]> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
    }

    pub fn zero_in(vars: &Arc<[String]>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial_in(&Arc::from(Vec::new()), Monomial::one(), c)
    }

    pub fn monomial_in(vars: &Arc<[String]>, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable with the given 0-based position.
    pub fn var(vars: &Arc<[String]>, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        Self::monomial_in(vars, Monomial::var(index), Rational::one())
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest exponent of a variable over all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_in(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Positive rational `c` with `self / c` integral and primitive.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Rational::one()
        } else {
            Rational::new(g, l)
        }
    }

    /// `self` scaled so that it is integral, primitive, and has a positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let Some((_, lead)) = self.leading() else {
            return self.clone();
        };
        let mut c = self.content();
        if lead.is_negative() {
            c = -c;
        }
        self.scale(&(Rational::one() / c))
    }

    pub fn eval<F: Scalar>(&self, point: &[F]) -> Result<F> {
        if !self.vars.is_empty() && point.len() != self.vars.len() {
            return Err(Error::ArityMismatch {
                expected: self.vars.len(),
                found: point.len(),
            });
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let vars = unify_vars(&self.vars, &divisor.vars);
        let mut rem = self.clone();
        rem.vars = vars.clone();
        let mut quot = MultiPoly::zero_in(&vars);
        while let Some((m, c)) = rem.leading() {
            if !dm.divides(m) {
                return None;
            }
            let t = MultiPoly::monomial_in(&vars, m.div(&dm), c / &dc);
            rem = rem - t.clone() * divisor.clone();
            quot = quot + t;
        }
        Some(quot)
    }

    /// Largest monomial dividing every term (1 for the zero polynomial).
    pub fn monomial_gcd(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn div_monomial(&self, d: &Monomial) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.div(d), c.clone())).collect(),
        }
    }

    /// Re-expresses the polynomial over a larger ring whose variable list
    /// starts with this one's.
    pub fn embed(&self, vars: &Arc<[String]>) -> Self {
        assert!(
            vars.len() >= self.vars.len() && vars[..self.vars.len()] == self.vars[..],
            "embedding into a ring that does not extend {:?}",
            self.vars
        );
        MultiPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Canonical term list, leading term first.
    pub fn to_term_list(&self) -> TermList {
        let n = self.nvars();
        TermList {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| Term {
                    coeff: format_rational(c),
                    exponents: m.exponents(n),
                })
                .collect(),
            text: self.to_string(),
        }
    }

    /// Parses an expression such as `"2*b1^2 - 1/3*b2 + (b1 - 1)*b2"`.
    pub fn parse(text: &str, vars: &Arc<[String]>) -> Result<Self> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!(
                "unexpected input at offset {} in {text:?}",
                p.pos
            )));
        }
        Ok(e.embed_or_keep(vars))
    }

    fn embed_or_keep(self, vars: &Arc<[String]>) -> Self {
        if self.vars.is_empty() {
            MultiPoly {
                vars: vars.clone(),
                terms: self.terms,
            }
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

/// Serialized polynomial: variable names, terms in descending order, and text.
#[derive(Clone, Debug, Serialize)]
pub struct TermList {
    pub vars: Vec<String>,
    pub terms: Vec<Term>,
    pub text: String,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: MultiPoly) -> MultiPoly {
        let vars = unify_vars(&self.vars, &rhs.vars);
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.terms, rhs.terms)
        } else {
            (rhs.terms, self.terms)
        };
        for (m, c) in small {
            match big.get_mut(&m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        big.remove(&m);
                    }
                }
                None => {
                    big.insert(m, c);
                }
            }
        }
        MultiPoly { vars, terms: big }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        let vars = unify_vars(&self.vars, &rhs.vars);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                let entry = terms.entry(m).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms }
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero_in(&Arc::from(Vec::new()))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl Scalar for MultiPoly {
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                let name = self.vars.get(i).map_or_else(|| format!("x{}", i + 1), Clone::clone);
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<[String]>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected exponent"))?;
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc * base.clone();
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let mut text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let ds = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if ds == self.pos {
                        return Err(self.err("expected denominator"));
                    }
                    text.push('/');
                    text.push_str(std::str::from_utf8(&self.src[ds..self.pos]).unwrap());
                }
                Ok(MultiPoly::constant(parse_rational(&text)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(MultiPoly::var(self.vars, idx))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}
