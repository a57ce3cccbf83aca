//! Algebras whose structure constants are polynomials in parameters `b1..bm`.

use std::sync::Arc;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Rational;
use crate::NilpotentLieAlgebra;

/// A variable nilpotent Lie algebra: one bracket per parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct VariableFamily {
    params: Arc<[String]>,
    structure: LieAlgebra<MultiPoly>,
}

impl VariableFamily {
    /// Triangularity is checked by the constructor of the underlying algebra;
    /// the Jacobi identity is checked as a polynomial identity in the parameters.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        param_count: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, MultiPoly)>,
    ) -> Result<Self> {
        let params = MultiPoly::numbered_ring("b", param_count);
        let constants: Vec<_> = constants
            .into_iter()
            .map(|(i, j, k, p)| {
                if !p.vars().is_empty() && p.vars() != &params {
                    return Err(Error::InvalidInput(format!(
                        "coefficient {p} is not in the parameter ring b1..b{param_count}"
                    )));
                }
                Ok((i, j, k, p))
            })
            .collect::<Result<_>>()?;
        let structure = LieAlgebra::from_constants(name, dim, constants)?.validate()?;
        Ok(VariableFamily { params, structure })
    }

    pub fn parse_coefficient(&self, text: &str) -> Result<MultiPoly> {
        MultiPoly::parse(text, &self.params)
    }

    pub fn name(&self) -> &str {
        self.structure.name()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn param_ring(&self) -> &Arc<[String]> {
        &self.params
    }

    pub fn structure(&self) -> &LieAlgebra<MultiPoly> {
        &self.structure
    }

    /// The algebra at parameter point `beta`.
    pub fn evaluate(&self, beta: &[Rational]) -> Result<NilpotentLieAlgebra> {
        if beta.len() != self.param_count() {
            return Err(Error::ArityMismatch {
                expected: self.param_count(),
                found: beta.len(),
            });
        }
        let mut constants = Vec::new();
        for (i, j, k, p) in self.structure.constants() {
            constants.push((i, j, k, p.eval(beta)?));
        }
        let name = format!(
            "{}@({})",
            self.name(),
            beta.iter().map(crate::scalar::format_rational).collect::<Vec<_>>().join(",")
        );
        LieAlgebra::from_constants(name, self.dim(), constants)?.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    #[test]
    fn evaluation_examples() {
        let fam = catalog::beta_h3();
        let at_one = fam.evaluate(&[int(1)]).unwrap();
        assert_eq!(
            at_one.constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect::<Vec<_>>(),
            catalog::h3().constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect::<Vec<_>>()
        );
        assert!(fam.evaluate(&[int(0)]).unwrap().is_abelian());
        let at_two = fam.evaluate(&[int(2)]).unwrap();
        assert_eq!(at_two.constants().next().map(|c| c.3.clone()), Some(int(2)));
        assert!(matches!(
            fam.evaluate(&[]),
            Err(Error::ArityMismatch { expected: 1, found: 0 })
        ));
    }

    #[test]
    fn polynomial_jacobi_is_checked() {
        // [Z1,Z2]=b1 Z4, [Z2,Z3]=Z5, [Z1,Z5]=Z6: the cyclic sum on (1,2,3) is -Z6 for every b1.
        let ring = MultiPoly::numbered_ring("b", 1);
        let one = MultiPoly::parse("1", &ring).unwrap();
        let b1 = MultiPoly::parse("b1", &ring).unwrap();
        let res = VariableFamily::new(
            "bad",
            6,
            1,
            [(1, 2, 4, b1), (2, 3, 5, one.clone()), (1, 5, 6, one)],
        );
        assert_eq!(res, Err(Error::JacobiViolation { i: 1, j: 2, k: 3 }));
    }

    #[test]
    fn polynomial_triangularity_is_checked() {
        let ring = MultiPoly::numbered_ring("b", 1);
        let b1 = MultiPoly::parse("b1^2 - b1", &ring).unwrap();
        assert_eq!(
            VariableFamily::new("bad", 3, 1, [(1, 3, 2, b1)]),
            Err(Error::TriangularityViolation { i: 1, j: 3, k: 2 })
        );
    }
}
