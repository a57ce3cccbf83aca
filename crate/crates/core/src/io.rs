//! JSON algebra definitions.
//!
//! ```json
//! {"name": "h3", "dim": 3, "brackets": [{"i": 1, "j": 2, "terms": {"3": "1"}}]}
//! ```
//!
//! Labels are 1-based with `i < j`. A family adds `"params": m` and writes
//! coefficients as polynomials in `b1..bm`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::catalog::Entry;
use crate::error::{Error, Result};
use crate::family::VariableFamily;
use crate::poly::MultiPoly;
use crate::scalar::{format_rational, parse_rational};
use crate::NilpotentLieAlgebra;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<usize>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_entry(self) -> Result<Entry> {
        match self.params {
            None => {
                let mut constants = Vec::new();
                for b in &self.brackets {
                    for (k, c) in &b.terms {
                        constants.push((b.i, b.j, *k, parse_rational(c)?));
                    }
                }
                let alg = LieAlgebra::from_constants(self.name, self.dim, constants)?.validate()?;
                Ok(Entry::Algebra(alg))
            }
            Some(m) => {
                let ring = MultiPoly::numbered_ring("b", m);
                let mut constants = Vec::new();
                for b in &self.brackets {
                    for (k, c) in &b.terms {
                        constants.push((b.i, b.j, *k, MultiPoly::parse(c, &ring)?));
                    }
                }
                Ok(Entry::Family(VariableFamily::new(self.name, self.dim, m, constants)?))
            }
        }
    }

    pub fn from_algebra(alg: &NilpotentLieAlgebra) -> Self {
        AlgebraFile {
            name: alg.name().to_string(),
            dim: alg.dim(),
            params: None,
            brackets: group(alg.constants().map(|(i, j, k, c)| (i, j, k, format_rational(c)))),
        }
    }

    pub fn from_family(fam: &VariableFamily) -> Self {
        AlgebraFile {
            name: fam.name().to_string(),
            dim: fam.dim(),
            params: Some(fam.param_count()),
            brackets: group(fam.structure().constants().map(|(i, j, k, c)| (i, j, k, c.to_string()))),
        }
    }

    pub fn from_entry(entry: &Entry) -> Self {
        match entry {
            Entry::Algebra(a) => Self::from_algebra(a),
            Entry::Family(f) => Self::from_family(f),
        }
    }
}

fn group(items: impl Iterator<Item = (usize, usize, usize, String)>) -> Vec<BracketEntry> {
    let mut map: BTreeMap<(usize, usize), BTreeMap<usize, String>> = BTreeMap::new();
    for (i, j, k, c) in items {
        map.entry((i, j)).or_default().insert(k, c);
    }
    map.into_iter()
        .map(|((i, j), terms)| BracketEntry { i, j, terms })
        .collect()
}

pub fn parse_definition(text: &str) -> Result<Entry> {
    AlgebraFile::from_json(text)?.into_entry()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parses_h3() {
        let text = r#"{"name":"h3","dim":3,"brackets":[{"i":1,"j":2,"terms":{"3":"1"}}]}"#;
        match parse_definition(text).unwrap() {
            Entry::Algebra(a) => assert_eq!(a, catalog::h3()),
            Entry::Family(_) => panic!("expected an algebra"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        let tri = r#"{"name":"bad","dim":2,"brackets":[{"i":1,"j":2,"terms":{"1":"1"}}]}"#;
        assert_eq!(
            parse_definition(tri).unwrap_err(),
            Error::TriangularityViolation { i: 1, j: 2, k: 1 }
        );
        let order = r#"{"name":"bad","dim":3,"brackets":[{"i":2,"j":1,"terms":{"3":"1"}}]}"#;
        assert!(matches!(parse_definition(order), Err(Error::InvalidInput(_))));
        let coef = r#"{"name":"bad","dim":3,"brackets":[{"i":1,"j":2,"terms":{"3":"x"}}]}"#;
        assert!(matches!(parse_definition(coef), Err(Error::Parse(_))));
        assert!(matches!(parse_definition("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn families_round_trip() {
        let fam = catalog::beta_h3();
        let file = AlgebraFile::from_family(&fam);
        let text = serde_json::to_string(&file).unwrap();
        match parse_definition(&text).unwrap() {
            Entry::Family(f) => assert_eq!(f, fam),
            Entry::Algebra(_) => panic!("expected a family"),
        }
    }
}
