//! Gaussian-polynomial test functions on `H3` in exponential coordinates.

use crate::error::{Error, Result};

use super::heisenberg::Point;

/// `Σ a_e (x - c)^e · exp(-|x - c|² / (2 w²))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPolynomial {
    pub center: Point,
    pub width: f64,
    /// `(a_e, e)` with exponents per coordinate.
    pub terms: Vec<(f64, [u32; 3])>,
}

impl GaussianPolynomial {
    pub fn new(center: Point, width: f64, terms: Vec<(f64, [u32; 3])>) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidInput(format!("width must be positive, got {width}")));
        }
        if center.iter().chain(terms.iter().map(|t| &t.0)).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("test function parameters must be finite".into()));
        }
        Ok(GaussianPolynomial { center, width, terms })
    }

    pub fn eval(&self, x: &Point) -> f64 {
        let d = [x[0] - self.center[0], x[1] - self.center[1], x[2] - self.center[2]];
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        let envelope = (-r2 / (2.0 * self.width * self.width)).exp();
        if envelope == 0.0 {
            return 0.0;
        }
        let poly: f64 = self
            .terms
            .iter()
            .map(|(a, e)| a * d[0].powi(e[0] as i32) * d[1].powi(e[1] as i32) * d[2].powi(e[2] as i32))
            .sum();
        poly * envelope
    }
}

/// A finite sum of Gaussian-polynomial bumps.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TestFunction {
    pub parts: Vec<GaussianPolynomial>,
}

impl TestFunction {
    pub fn zero() -> Self {
        TestFunction::default()
    }

    pub fn gaussian(center: Point, width: f64) -> Result<Self> {
        Ok(TestFunction {
            parts: vec![GaussianPolynomial::new(center, width, vec![(1.0, [0, 0, 0])])?],
        })
    }

    /// Parses `gaussian:c1,c2,c3:w[:a@e1e2e3;...]`, several joined by `+`.
    /// Without a term list the prefactor is 1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for piece in text.split('+') {
            let fields: Vec<&str> = piece.trim().split(':').collect();
            if fields.len() < 3 || fields.len() > 4 || fields[0] != "gaussian" {
                return Err(Error::Parse(format!(
                    "expected gaussian:c1,c2,c3:w[:terms], got {piece:?}"
                )));
            }
            let center: Vec<f64> = fields[1].split(',').map(parse_f64).collect::<Result<_>>()?;
            let [c1, c2, c3] = center[..] else {
                return Err(Error::Parse(format!("center {:?} needs three coordinates", fields[1])));
            };
            let width = parse_f64(fields[2])?;
            let terms = match fields.get(3) {
                None => vec![(1.0, [0, 0, 0])],
                Some(list) => list.split(';').map(parse_term).collect::<Result<_>>()?,
            };
            parts.push(GaussianPolynomial::new([c1, c2, c3], width, terms)?);
        }
        Ok(TestFunction { parts })
    }

    pub fn eval(&self, x: &Point) -> f64 {
        self.parts.iter().map(|p| p.eval(x)).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        TestFunction {
            parts: self
                .parts
                .iter()
                .map(|p| GaussianPolynomial {
                    terms: p.terms.iter().map(|(a, e)| (a * s, *e)).collect(),
                    ..p.clone()
                })
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        TestFunction {
            parts: self.parts.iter().chain(&other.parts).cloned().collect(),
        }
    }

    /// The function `x ↦ f(x - d)` (shift in coordinates).
    pub fn shifted(&self, d: &Point) -> Self {
        TestFunction {
            parts: self
                .parts
                .iter()
                .map(|p| GaussianPolynomial {
                    center: [p.center[0] + d[0], p.center[1] + d[1], p.center[2] + d[2]],
                    ..p.clone()
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.terms.iter().all(|t| t.0 == 0.0))
    }

    pub fn min_width(&self) -> f64 {
        self.parts.iter().map(|p| p.width).fold(f64::INFINITY, f64::min)
    }

    /// Box outside which every bump is below `exp(-sigmas² / 2)` of its scale.
    pub fn bounds(&self, sigmas: f64) -> [(f64, f64); 3] {
        let mut b = [(f64::INFINITY, f64::NEG_INFINITY); 3];
        for p in &self.parts {
            for (i, bi) in b.iter_mut().enumerate() {
                bi.0 = bi.0.min(p.center[i] - sigmas * p.width);
                bi.1 = bi.1.max(p.center[i] + sigmas * p.width);
            }
        }
        b
    }

    pub fn spec(&self) -> String {
        self.parts
            .iter()
            .map(|p| {
                let terms: Vec<String> = p
                    .terms
                    .iter()
                    .map(|(a, e)| format!("{a}@{}{}{}", e[0], e[1], e[2]))
                    .collect();
                format!(
                    "gaussian:{},{},{}:{}:{}",
                    p.center[0],
                    p.center[1],
                    p.center[2],
                    p.width,
                    terms.join(";")
                )
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse(format!("bad number {s:?}")))
}

fn parse_term(s: &str) -> Result<(f64, [u32; 3])> {
    let (a, e) = s
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("term {s:?} must look like a@e1e2e3")))?;
    let digits: Vec<u32> = e.trim().chars().map(|c| c.to_digit(10)).collect::<Option<_>>().unwrap_or_default();
    let [e1, e2, e3] = digits[..] else {
        return Err(Error::Parse(format!("exponents {e:?} must be three digits")));
    };
    Ok((parse_f64(a)?, [e1, e2, e3]))
}
