use crate::linalg::{echelon_basis, Matrix};
use crate::scalar::ExactField;

/// Linear subspace of `F^n`, stored as the nonzero rows of its reduced
/// echelon form so that equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: ExactField> Subspace<F> {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let vs: Vec<Vec<F>> = vectors.into_iter().collect();
        assert!(vs.iter().all(|v| v.len() == ambient), "vector length mismatch");
        Subspace {
            ambient,
            basis: echelon_basis(vs, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            }),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    fn pivot(row: &[F]) -> usize {
        row.iter().position(|v| !v.is_zero()).expect("nonzero basis row")
    }

    /// `v` minus its echelon reduction against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot(row);
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (a, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = a.clone() - f.clone() * b.clone();
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Vectors `q` with `⟨b, q⟩ = 0` for every basis vector `b`, i.e. the
    /// annihilator written in dual coordinates.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        if self.basis.is_empty() {
            return Self::whole(self.ambient).basis;
        }
        Matrix::from_rows(self.basis.clone()).kernel_basis()
    }

    /// Coefficients `c` with `Σ c_i basis_i = v`, when `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.basis.iter().map(|row| v[Self::pivot(row)].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn r(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonical_bases_compare_equal() {
        let a = Subspace::span(3, [r(&[1, 1, 0]), r(&[0, 1, 0])]);
        let b = Subspace::span(3, [r(&[2, 0, 0]), r(&[3, 5, 0])]);
        assert_eq!(a, b);
        assert!(a.contains(&r(&[7, -2, 0])));
        assert!(!a.contains(&r(&[0, 0, 1])));
        assert_eq!(a.coordinates(&r(&[7, -2, 0])).unwrap(), r(&[7, -2]));
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let a = Subspace::span(3, [r(&[1, 2, 3])]);
        let ann = a.annihilator();
        assert_eq!(ann.len(), 2);
        for q in ann {
            let dot: Rational = q.iter().zip(&a.basis()[0]).map(|(x, y)| x * y).sum();
            assert_eq!(dot, int(0));
        }
    }
}
