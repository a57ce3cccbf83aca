use crate::algebra::{Covector, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polarization::form;
use crate::scalar::{ExactField, Scalar};
use crate::Vector;

/// `⟨l, [Z_i, Z_j]⟩` for `i, j` in `labels`, in the given order.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewForm<F> {
    pub l: Covector<F>,
    pub labels: Vec<usize>,
    pub matrix: Matrix<F>,
}

impl<F: ExactField> SkewForm<F> {
    pub fn new(alg: &LieAlgebra<F>, l: &Covector<F>, labels: &[usize]) -> Result<Self> {
        alg.check_dim(l.len())?;
        let n = alg.dim();
        if let Some(&bad) = labels.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidInput(format!("label {bad} out of range 1..={n}")));
        }
        let m = labels.len();
        let mut matrix = Matrix::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    matrix[(a, b)] = form(
                        alg,
                        l,
                        &Vector::<F>::basis(n, labels[a]),
                        &Vector::<F>::basis(n, labels[b]),
                    );
                }
            }
        }
        Ok(SkewForm {
            l: l.clone(),
            labels: labels.to_vec(),
            matrix,
        })
    }

    pub fn determinant(&self) -> F {
        if self.labels.is_empty() {
            return F::one();
        }
        self.matrix.determinant()
    }

    pub fn pfaffian(&self) -> Result<F> {
        pfaffian_of(&self.matrix)
    }
}

/// Pfaffian by expansion along the first row; the empty matrix has Pfaffian 1.
pub fn pfaffian_of<F: Scalar>(m: &Matrix<F>) -> Result<F> {
    if m.rows() % 2 == 1 {
        return Err(Error::OddSize(m.rows()));
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(expand(m, &idx))
}

fn expand<F: Scalar>(m: &Matrix<F>, idx: &[usize]) -> F {
    if idx.is_empty() {
        return F::one();
    }
    let first = idx[0];
    let mut total = F::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[(first, j)];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&i| i != j).collect();
        let term = a.clone() * expand(m, &rest);
        total = if pos % 2 == 1 { total + term } else { total - term };
    }
    total
}

pub fn pfaffian<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, labels: &[usize]) -> Result<F> {
    if labels.len() % 2 == 1 {
        return Err(Error::OddSize(labels.len()));
    }
    SkewForm::new(alg, l, labels)?.pfaffian()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{int, rat, Rational};

    #[test]
    fn pfaffian_examples() {
        let h3 = catalog::h3();
        let lam = rat(-7, 3);
        let l = Covector(vec![int(0), int(0), lam.clone()]);
        assert_eq!(pfaffian(&h3, &l, &[1, 2]).unwrap(), lam);
        assert_eq!(pfaffian(&h3, &l, &[]).unwrap(), int(1));
        assert_eq!(pfaffian(&h3, &l, &[1, 2, 3]), Err(Error::OddSize(3)));

        let (a, b) = (rat(2, 5), int(-3));
        let mut m = Matrix::<Rational>::zeros(4, 4);
        m[(0, 1)] = a.clone();
        m[(1, 0)] = -a.clone();
        m[(2, 3)] = b.clone();
        m[(3, 2)] = -b.clone();
        assert_eq!(pfaffian_of(&m).unwrap(), a * b);
    }

    #[test]
    fn square_is_determinant() {
        let mut m = Matrix::<Rational>::zeros(6, 6);
        let mut v = 1;
        for i in 0..6 {
            for j in i + 1..6 {
                v = (v * 7 + 3) % 11 - 5;
                m[(i, j)] = int(v);
                m[(j, i)] = int(-v);
            }
        }
        let pf = pfaffian_of(&m).unwrap();
        assert_eq!(pf.clone() * pf, m.determinant());
    }
}
