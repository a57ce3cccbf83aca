//! Built-in fixtures addressed on the command line as `catalog:<name>`.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::family::VariableFamily;
use crate::poly::MultiPoly;
use crate::scalar::int;
use crate::NilpotentLieAlgebra;

/// Catalog entry: either a fixed algebra or a parameter family.
#[derive(Clone, Debug)]
pub enum Entry {
    Algebra(NilpotentLieAlgebra),
    Family(VariableFamily),
}

pub const NAMES: &[&str] = &[
    "abelian1", "abelian2", "abelian3", "abelian4", "abelian5", "abelian6", "h3", "h5", "f4",
    "beta-h3",
];

/// Fixed algebras exercised by the acceptance suite.
pub const ACCEPTANCE: &[&str] = &["abelian3", "abelian4", "abelian5", "abelian6", "h3", "h5", "f4"];

pub fn abelian(n: usize) -> NilpotentLieAlgebra {
    assert!((1..=6).contains(&n), "catalog abelian algebras have dimension 1..=6");
    LieAlgebra::abelian(format!("abelian{n}"), n)
}

/// Heisenberg algebra: `[Z1,Z2] = Z3`.
pub fn h3() -> NilpotentLieAlgebra {
    LieAlgebra::from_constants("h3", 3, [(1, 2, 3, int(1))]).expect("h3")
}

/// Five-dimensional Heisenberg algebra: `[Z1,Z2] = [Z3,Z4] = Z5`.
pub fn h5() -> NilpotentLieAlgebra {
    LieAlgebra::from_constants("h5", 5, [(1, 2, 5, int(1)), (3, 4, 5, int(1))]).expect("h5")
}

/// Four-dimensional filiform algebra: `[Z1,Z2] = Z3`, `[Z1,Z3] = Z4`.
pub fn f4() -> NilpotentLieAlgebra {
    LieAlgebra::from_constants("f4", 4, [(1, 2, 3, int(1)), (1, 3, 4, int(1))]).expect("f4")
}

/// `[Z1,Z2] = b1·Z3`.
pub fn beta_h3() -> VariableFamily {
    let ring = MultiPoly::numbered_ring("b", 1);
    VariableFamily::new("beta-h3", 3, 1, [(1, 2, 3, MultiPoly::var(&ring, 0))]).expect("beta-h3")
}

pub fn lookup(name: &str) -> Result<Entry> {
    match name {
        "h3" => Ok(Entry::Algebra(h3())),
        "h5" => Ok(Entry::Algebra(h5())),
        "f4" => Ok(Entry::Algebra(f4())),
        "beta-h3" => Ok(Entry::Family(beta_h3())),
        _ => name
            .strip_prefix("abelian")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=6).contains(n))
            .map(|n| Entry::Algebra(abelian(n)))
            .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry {name:?}"))),
    }
}

/// A fixed algebra from the catalog.
pub fn algebra(name: &str) -> Result<NilpotentLieAlgebra> {
    match lookup(name)? {
        Entry::Algebra(a) => Ok(a),
        Entry::Family(_) => Err(Error::InvalidInput(format!(
            "{name} is a parameter family, not a fixed algebra"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        for name in NAMES {
            match lookup(name).unwrap() {
                Entry::Algebra(a) => {
                    assert!(a.clone().validate().is_ok(), "{name}");
                    let series = a.lower_central_series();
                    assert_eq!(*series.last().unwrap(), 0);
                    assert!(series.len() <= a.dim() + 1, "{name}: {series:?}");
                }
                Entry::Family(f) => assert_eq!(f.param_count(), 1),
            }
        }
        assert!(lookup("abelian7").is_err());
        assert!(algebra("beta-h3").is_err());
    }
}
