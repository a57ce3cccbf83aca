//! Layers of `g*` cut out by Ludwig-Zahir index sets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Covector;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::polarization::{forced_run, ludwig_zahir};
use crate::ratfunc::RatFunction;
use crate::sampling;
use crate::scalar::Rational;
use crate::NilpotentLieAlgebra;

/// Pairs `(j_1,k_1), ..., (j_r,k_r)` of original basis labels.
///
/// Shorter sets are smaller; equal lengths compare pair by pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct IndexSet(Vec<(usize, usize)>);

impl IndexSet {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen: Vec<usize> = pairs.iter().flat_map(|&(j, k)| [j, k]).collect();
        if seen.contains(&0) {
            return Err(Error::InvalidInput("index labels are 1-based".into()));
        }
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "index set {pairs:?} repeats a label"
            )));
        }
        Ok(IndexSet(pairs))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// Parses `"2,1;4,3"` (pairs separated by `;`), or `""` for the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "∅" {
            return Ok(Self::empty());
        }
        let pairs = text
            .split(';')
            .map(|p| {
                let ns: Vec<usize> = p
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad label {s:?} in index set")))
                    })
                    .collect::<Result<_>>()?;
                match ns[..] {
                    [j, k] => Ok((j, k)),
                    _ => Err(Error::Parse(format!("index pair {p:?} must have two labels"))),
                }
            })
            .collect::<Result<_>>()?;
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of steps `r`.
    pub fn steps(&self) -> usize {
        self.0.len()
    }

    /// `|I| = 2r`, the orbit dimension.
    pub fn size(&self) -> usize {
        2 * self.0.len()
    }

    /// `j_1, k_1, ..., j_r, k_r`.
    pub fn flattened(&self) -> Vec<usize> {
        self.0.iter().flat_map(|&(j, k)| [j, k]).collect()
    }

    pub fn sorted_labels(&self) -> Vec<usize> {
        let mut v = self.flattened();
        v.sort_unstable();
        v
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, (j, k)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({j},{k})")?;
        }
        write!(f, ")")
    }
}

pub fn index_of(alg: &NilpotentLieAlgebra, l: &Covector<Rational>) -> Result<IndexSet> {
    Ok(ludwig_zahir(alg, l)?.index_set)
}

pub fn lex_compare(a: &IndexSet, b: &IndexSet) -> Ordering {
    a.cmp(b)
}

/// The covector `(l1, ..., ln)` over a ring whose first `n` variables are the `l_i`.
pub fn symbolic_covector(ring: &Arc<[String]>, n: usize) -> Covector<RatFunction> {
    Covector((0..n).map(|i| RatFunction::var(ring, i)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerDescription {
    pub index_set: IndexSet,
    /// Content-normalized product of the numerators of `c_1, ..., c_r`.
    pub polynomial: MultiPoly,
    /// `c_s` as rational functions of `l`.
    pub c_values: Vec<RatFunction>,
    /// Labels whose coordinates vanish on the Pukanszky section.
    pub section_labels: Vec<usize>,
}

impl LayerDescription {
    pub fn eval(&self, l: &Covector<Rational>) -> Result<Rational> {
        self.polynomial.eval(l)
    }
}

/// Runs the index algorithm with `l` indeterminate and the choices of
/// `index` imposed.
pub fn layer_polynomial(alg: &NilpotentLieAlgebra, index: &IndexSet) -> Result<LayerDescription> {
    let n = alg.dim();
    let ring = MultiPoly::numbered_ring("l", n);
    let sym = alg.cast::<RatFunction>();
    let l = symbolic_covector(&ring, n);
    let trace = forced_run(&sym, &l, index)?;
    let mut p = MultiPoly::constant(Rational::from_integer(1.into())).embed(&ring);
    let mut c_values = Vec::new();
    for s in &trace.steps {
        p = p * s.c.numerator().clone();
        c_values.push(s.c.clone());
    }
    Ok(LayerDescription {
        index_set: index.clone(),
        polynomial: p.primitive_part(),
        c_values,
        section_labels: index.flattened(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub index_set: IndexSet,
    /// First sample (in draw order) that fell into this layer.
    pub witness: Covector<Rational>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerEnumeration {
    pub samples: usize,
    pub seed: u64,
    /// Sorted from the largest index set down.
    pub layers: Vec<Layer>,
}

impl LayerEnumeration {
    /// The largest discovered index set.
    pub fn candidate_max(&self) -> Option<&Layer> {
        self.layers.first()
    }
}

/// Indexes `budget` seeded samples in the current rayon pool and merges them
/// in draw order, so the result does not depend on the thread count.
pub fn enumerate_layers(alg: &NilpotentLieAlgebra, budget: usize, seed: u64) -> Result<LayerEnumeration> {
    if budget == 0 {
        return Err(Error::InvalidInput("sample budget must be at least 1".into()));
    }
    let samples = sampling::covectors(seed, alg.dim(), budget);
    let indices: Vec<IndexSet> = samples
        .par_iter()
        .map(|l| index_of(alg, l))
        .collect::<Result<_>>()?;
    let mut merged: BTreeMap<IndexSet, Layer> = BTreeMap::new();
    for (l, i) in samples.into_iter().zip(indices) {
        merged
            .entry(i.clone())
            .and_modify(|layer| layer.count += 1)
            .or_insert(Layer {
                index_set: i,
                witness: l,
                count: 1,
            });
    }
    Ok(LayerEnumeration {
        samples: budget,
        seed,
        layers: merged.into_values().rev().collect(),
    })
}

/// `index_of(l) = I` and `l` vanishes at every label of `I`.
pub fn in_pukanszky_section(
    alg: &NilpotentLieAlgebra,
    l: &Covector<Rational>,
    index: &IndexSet,
) -> Result<bool> {
    use num_traits::Zero;
    Ok(index_of(alg, l)? == *index && index.flattened().iter().all(|&i| l.at(i).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    fn cov(xs: &[i64]) -> Covector<Rational> {
        Covector(xs.iter().map(|&x| int(x)).collect())
    }

    fn idx(pairs: &[(usize, usize)]) -> IndexSet {
        IndexSet::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn lex_order_examples() {
        assert_eq!(lex_compare(&IndexSet::empty(), &idx(&[(2, 1)])), Ordering::Less);
        assert_eq!(lex_compare(&idx(&[(2, 1)]), &idx(&[(3, 1)])), Ordering::Less);
        assert_eq!(lex_compare(&idx(&[(3, 1)]), &idx(&[(3, 2)])), Ordering::Less);
        assert_eq!(lex_compare(&idx(&[(5, 1)]), &idx(&[(2, 1), (4, 3)])), Ordering::Less);
    }

    #[test]
    fn index_sets_parse_and_reject_repeats() {
        assert_eq!(IndexSet::parse("4,3;2,1").unwrap(), idx(&[(4, 3), (2, 1)]));
        assert_eq!(IndexSet::parse("").unwrap(), IndexSet::empty());
        assert!(IndexSet::parse("2,2").is_err());
        assert!(IndexSet::parse("2").is_err());
        assert_eq!(idx(&[(4, 3), (2, 1)]).to_string(), "((4,3),(2,1))");
    }

    #[test]
    fn index_examples() {
        let h3 = catalog::h3();
        assert_eq!(index_of(&h3, &cov(&[0, 0, 1])).unwrap(), idx(&[(2, 1)]));
        assert_eq!(index_of(&h3, &cov(&[1, 0, 0])).unwrap(), IndexSet::empty());
        assert_eq!(index_of(&catalog::f4(), &cov(&[0, 0, 0, 1])).unwrap(), idx(&[(3, 1)]));
    }

    #[test]
    fn layer_polynomial_examples() {
        let p = layer_polynomial(&catalog::h3(), &idx(&[(2, 1)])).unwrap();
        assert_eq!(p.polynomial.to_string(), "l3");
        let p = layer_polynomial(&catalog::f4(), &idx(&[(3, 1)])).unwrap();
        assert_eq!(p.polynomial.to_string(), "l4");
        assert!(matches!(
            layer_polynomial(&catalog::h3(), &idx(&[(3, 1)])),
            Err(Error::InconsistentIndexSet { .. })
        ));
        let p = layer_polynomial(&catalog::h5(), &idx(&[(4, 3), (2, 1)])).unwrap();
        assert_eq!(p.polynomial.to_string(), "l5^2");
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_layers(&catalog::abelian(3), 50, 1).unwrap();
        assert_eq!(e.layers.len(), 1);
        assert!(e.layers[0].index_set.is_empty());

        let e = enumerate_layers(&catalog::h3(), 100, 1).unwrap();
        let sets: Vec<_> = e.layers.iter().map(|l| l.index_set.clone()).collect();
        assert_eq!(sets, vec![idx(&[(2, 1)]), IndexSet::empty()]);

        let e = enumerate_layers(&catalog::f4(), 100, 1).unwrap();
        assert_eq!(e.candidate_max().unwrap().index_set, idx(&[(3, 1)]));
        assert_eq!(e.layers.iter().map(|l| l.count).sum::<usize>(), 100);
    }

    #[test]
    fn section_membership() {
        let h3 = catalog::h3();
        assert!(in_pukanszky_section(&h3, &cov(&[0, 0, 1]), &idx(&[(2, 1)])).unwrap());
        assert!(!in_pukanszky_section(&h3, &cov(&[1, 0, 1]), &idx(&[(2, 1)])).unwrap());
        let ab = catalog::abelian(3);
        assert!(in_pukanszky_section(&ab, &cov(&[1, 2, 3]), &IndexSet::empty()).unwrap());
    }
}
