//! Nilpotent Lie algebras given by structure constants in a Jordan-Hölder basis.
//!
//! Basis labels are 1-based (`Z1..Zn`); coordinate vectors are 0-based
//! slices. The bracket is stored only for `i < j`, so antisymmetry holds by
//! construction, and the constructor rejects any constant `a^k_ij` with
//! `k <= max(i, j)`.

use std::collections::BTreeMap;
use std::ops::Deref;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{inverse_factorial, ExactField, Rational, Scalar};
use crate::subspace::Subspace;

/// Coordinates of `X = Σ x_i Z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<F>(pub Vec<F>);

/// Coordinates of `l = Σ l_i Z_i*` in the dual basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Covector<F>(pub Vec<F>);

impl<F> Deref for Vector<F> {
    type Target = [F];

    fn deref(&self) -> &[F] {
        &self.0
    }
}

impl<F> Deref for Covector<F> {
    type Target = [F];

    fn deref(&self) -> &[F] {
        &self.0
    }
}

impl<F: Scalar> Vector<F> {
    pub fn zero(n: usize) -> Self {
        Vector(vec![F::zero(); n])
    }

    /// Basis vector `Z_label` (1-based).
    pub fn basis(n: usize, label: usize) -> Self {
        let mut v = vec![F::zero(); n];
        v[label - 1] = F::one();
        Vector(v)
    }

    pub fn scale(&self, s: &F) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl<F: Scalar> Covector<F> {
    pub fn zero(n: usize) -> Self {
        Covector(vec![F::zero(); n])
    }

    /// Dual basis element `Z_label*` (1-based).
    pub fn basis(n: usize, label: usize) -> Self {
        let mut v = vec![F::zero(); n];
        v[label - 1] = F::one();
        Covector(v)
    }

    /// `⟨l, X⟩`.
    pub fn pair(&self, x: &[F]) -> F {
        self.0
            .iter()
            .zip(x)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Coordinate `⟨l, Z_label⟩` (1-based).
    pub fn at(&self, label: usize) -> &F {
        &self.0[label - 1]
    }
}

/// A nilpotent Lie algebra `g` with basis `Z1..Zn` and constants in `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F> {
    name: String,
    dim: usize,
    /// `(i, j)` 0-based with `i < j` ↦ nonzero `(k, a^k_ij)`, 0-based `k`.
    structure: BTreeMap<(usize, usize), Vec<(usize, F)>>,
    /// Upper bound on the nilpotency step derived from the sparsity pattern.
    step_bound: usize,
}

impl<F: Scalar> LieAlgebra<F> {
    /// Builds an algebra from `(i, j, k, a^k_ij)` with 1-based labels and `i < j`.
    /// Checks triangularity only; call [`LieAlgebra::validate`] for the full set.
    pub fn from_constants(
        name: impl Into<String>,
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let mut structure: BTreeMap<(usize, usize), Vec<(usize, F)>> = BTreeMap::new();
        for (i, j, k, c) in constants {
            for l in [i, j, k] {
                if l == 0 || l > dim {
                    return Err(Error::InvalidInput(format!(
                        "label {l} out of range 1..={dim}"
                    )));
                }
            }
            if i >= j {
                return Err(Error::InvalidInput(format!(
                    "bracket ({i},{j}) must have i < j"
                )));
            }
            if c.is_zero() {
                continue;
            }
            if k <= i.max(j) {
                return Err(Error::TriangularityViolation { i, j, k });
            }
            let entry = structure.entry((i - 1, j - 1)).or_default();
            match entry.iter_mut().find(|(kk, _)| *kk == k - 1) {
                Some((_, v)) => {
                    *v = v.clone() + c;
                }
                None => entry.push((k - 1, c)),
            }
        }
        for terms in structure.values_mut() {
            terms.retain(|(_, c)| !c.is_zero());
            terms.sort_by_key(|(k, _)| *k);
        }
        structure.retain(|_, t| !t.is_empty());
        let step_bound = step_bound(dim, &structure);
        Ok(LieAlgebra {
            name: name.into(),
            dim,
            structure,
            step_bound,
        })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        Self::from_constants(name, dim, std::iter::empty()).expect("abelian algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step_bound(&self) -> usize {
        self.step_bound
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_empty()
    }

    /// Nonzero constants as `(i, j, k, a^k_ij)` with 1-based labels.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &F)> {
        self.structure
            .iter()
            .flat_map(|(&(i, j), t)| t.iter().map(move |(k, c)| (i + 1, j + 1, k + 1, c)))
    }

    /// Maps every structure constant through `f`, keeping the basis.
    pub fn map_constants<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Result<LieAlgebra<G>> {
        LieAlgebra::from_constants(
            self.name.clone(),
            self.dim,
            self.constants().map(|(i, j, k, c)| (i, j, k, f(c))),
        )
    }

    /// The same algebra with constants embedded into another scalar type.
    pub fn cast<G: Scalar>(&self) -> LieAlgebra<G>
    where
        F: AsRational,
    {
        self.map_constants(|c| G::from_rational(c.as_rational()))
            .expect("embedding preserves validity")
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::AlgebraMismatch {
                expected: self.dim,
                found: len,
            });
        }
        Ok(())
    }

    /// `[Z_i, Z_j]` for 0-based `i, j`, as a sparse term list.
    fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, F)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.structure.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .structure
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket_coords(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (&(i, j), terms) in &self.structure {
            let mut coef = F::zero();
            if !x[i].is_zero() && !y[j].is_zero() {
                coef = coef + x[i].clone() * y[j].clone();
            }
            if !x[j].is_zero() && !y[i].is_zero() {
                coef = coef - x[j].clone() * y[i].clone();
            }
            if coef.is_zero() {
                continue;
            }
            for (k, a) in terms {
                out[*k] = out[*k].clone() + coef.clone() * a.clone();
            }
        }
        out
    }

    /// `[x, y]`.
    pub fn bracket(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(Vector(self.bracket_coords(x, y)))
    }

    /// Matrix of `ad x`; column `j` is `[x, Z_{j+1}]`.
    pub fn ad_matrix(&self, x: &Vector<F>) -> Result<Matrix<F>> {
        self.check_dim(x.len())?;
        let n = self.dim;
        let mut m: Matrix<F> = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                if x[i].is_zero() {
                    continue;
                }
                for (k, c) in self.basis_bracket(i, j) {
                    m[(k, j)] = m[(k, j)].clone() + x[i].clone() * c;
                }
            }
        }
        Ok(m)
    }

    /// `Ad(exp x) = Σ_k ad(x)^k / k!`, a finite sum.
    pub fn ad_exp(&self, x: &Vector<F>) -> Result<Matrix<F>> {
        let ad = self.ad_matrix(x)?;
        let n = self.dim;
        let mut total = Matrix::identity(n);
        let mut power = Matrix::identity(n);
        for k in 1..n.max(1) {
            power = power.mul(&ad);
            if power.is_zero() {
                break;
            }
            total = total.add(&power.scale(&F::from_rational(&inverse_factorial(k))));
        }
        Ok(total)
    }

    /// `Ad*(exp x) l`, the covector `y ↦ ⟨l, Ad(exp(-x)) y⟩`.
    pub fn coadjoint(&self, x: &Vector<F>, l: &Covector<F>) -> Result<Covector<F>> {
        self.check_dim(l.len())?;
        let m = self.ad_exp(&x.neg())?;
        Ok(Covector(m.transpose().mul_vec(l)))
    }

    /// `log(exp x · exp y)`.
    ///
    /// Homogeneous components follow the recursion
    /// `(n+1) Z_{n+1} = ½[x - y, Z_n] + Σ_p K_{2p} Σ [Z_{k1}, [..., [Z_{k2p}, x + y]]]`
    /// with `K_{2p} = B_{2p} / (2p)!`, which terminates after `step_bound` terms.
    pub fn bch(&self, x: &Vector<F>, y: &Vector<F>) -> Result<Vector<F>> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let n = self.dim;
        let sum = x.add(y);
        let diff = x.sub(y);
        let half = F::from_rational(&Rational::new(1.into(), 2.into()));
        let mut parts: Vec<Vec<F>> = vec![sum.0.clone()];
        for m in 1..self.step_bound {
            let mut next = self.bracket_coords(&diff, &parts[m - 1]);
            next.iter_mut().for_each(|v| *v = v.clone() * half.clone());
            for p in 1..=m / 2 {
                let coeff = bernoulli_over_factorial(2 * p);
                let mut acc = vec![F::zero(); n];
                for comp in compositions(m, 2 * p) {
                    let mut t = sum.0.clone();
                    for &k in comp.iter().rev() {
                        t = self.bracket_coords(&parts[k - 1], &t);
                    }
                    acc = acc.iter().zip(&t).map(|(a, b)| a.clone() + b.clone()).collect();
                }
                let c = F::from_rational(&coeff);
                for (v, a) in next.iter_mut().zip(acc) {
                    *v = v.clone() + c.clone() * a;
                }
            }
            let inv = F::from_rational(&Rational::new(1.into(), ((m + 1) as i64).into()));
            parts.push(next.into_iter().map(|v| v * inv.clone()).collect());
        }
        let mut z = vec![F::zero(); n];
        for p in parts {
            z = z.into_iter().zip(p).map(|(a, b)| a + b).collect();
        }
        Ok(Vector(z))
    }

    /// Failing triple `(i, j, k)` (1-based) of the Jacobi identity, if any.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (zi, zj, zk) = (
                        Vector::<F>::basis(n, i + 1),
                        Vector::basis(n, j + 1),
                        Vector::basis(n, k + 1),
                    );
                    let a = self.bracket_coords(&self.bracket_coords(&zi, &zj), &zk);
                    let b = self.bracket_coords(&self.bracket_coords(&zj, &zk), &zi);
                    let c = self.bracket_coords(&self.bracket_coords(&zk, &zi), &zj);
                    let bad = a
                        .into_iter()
                        .zip(b)
                        .zip(c)
                        .any(|((a, b), c)| !(a + b + c).is_zero());
                    if bad {
                        return Some((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        None
    }

    /// Checks the Jacobi identity exactly (triangularity is enforced at construction).
    pub fn validate(self) -> Result<Self> {
        match self.jacobi_failure() {
            Some((i, j, k)) => Err(Error::JacobiViolation { i, j, k }),
            None => Ok(self),
        }
    }
}

impl<F: ExactField> LieAlgebra<F> {
    pub fn whole(&self) -> Subspace<F> {
        Subspace::whole(self.dim)
    }

    /// `[a, b]` as a subspace.
    pub fn bracket_space(&self, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                vs.push(self.bracket_coords(u, v));
            }
        }
        Subspace::span(self.dim, vs)
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ... ⊇ {0}`.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let g = self.whole();
        let mut dims = vec![g.dim()];
        let mut cur = g.clone();
        while cur.dim() > 0 {
            cur = self.bracket_space(&g, &cur);
            dims.push(cur.dim());
            if dims.len() > self.dim + 1 {
                break;
            }
        }
        dims
    }

    /// Whether `s` is an ideal of `g`.
    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        let n = self.dim;
        s.basis().iter().all(|v| {
            (1..=n).all(|i| s.contains(&self.bracket_coords(&Vector::<F>::basis(n, i), v)))
        })
    }
}

/// Constants that can be read back as exact rationals.
pub trait AsRational {
    fn as_rational(&self) -> &Rational;
}

impl AsRational for Rational {
    fn as_rational(&self) -> &Rational {
        self
    }
}

fn step_bound<F: Scalar>(dim: usize, structure: &BTreeMap<(usize, usize), Vec<(usize, F)>>) -> usize {
    // depth[k]: most basis vectors a bracket monomial landing on Z_k can involve.
    let mut depth = vec![1usize; dim];
    for k in 0..dim {
        for (&(i, j), terms) in structure {
            if terms.iter().any(|(kk, _)| *kk == k) {
                depth[k] = depth[k].max(depth[i] + depth[j]);
            }
        }
    }
    depth.into_iter().max().unwrap_or(1)
}

/// Ordered tuples of `parts` positive integers summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `B_m / m!` for even `m >= 2`.
fn bernoulli_over_factorial(m: usize) -> Rational {
    bernoulli(m) * inverse_factorial(m)
}

fn bernoulli(m: usize) -> Rational {
    // B_0..B_m from Σ_{k<=j} C(j+1, k) B_k = 0.
    let mut b: Vec<Rational> = vec![Rational::one()];
    for j in 1..=m {
        let mut acc = Rational::zero();
        let mut binom = num_bigint::BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bk;
            binom = binom * num_bigint::BigInt::from(j + 1 - k) / num_bigint::BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(num_bigint::BigInt::from(j + 1)));
    }
    b[m].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{int, rat};

    fn v(xs: &[i64]) -> Vector<Rational> {
        Vector(xs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli_over_factorial(2), rat(1, 12));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(5, 4).len(), 4);
        assert!(compositions(1, 2).is_empty());
    }

    #[test]
    fn validation_examples() {
        let h3 = LieAlgebra::from_constants("h3", 3, [(1, 2, 3, int(1))]).unwrap();
        assert!(h3.validate().is_ok());
        assert_eq!(
            LieAlgebra::from_constants("bad", 2, [(1, 2, 1, int(1))]),
            Err(Error::TriangularityViolation { i: 1, j: 2, k: 1 })
        );
        let f4 =
            LieAlgebra::from_constants("f4", 4, [(1, 2, 3, int(1)), (1, 3, 4, int(1))]).unwrap();
        assert!(f4.validate().is_ok());
    }

    #[test]
    fn jacobi_violation_detected() {
        // [Z1,Z2]=Z4, [Z2,Z3]=Z5, [Z1,Z5]=Z6 but [Z4,Z3]=0: the cyclic sum leaves -Z6.
        let bad = LieAlgebra::from_constants(
            "bad",
            6,
            [(1, 2, 4, int(1)), (2, 3, 5, int(1)), (1, 5, 6, int(1))],
        )
        .unwrap();
        assert_eq!(bad.validate(), Err(Error::JacobiViolation { i: 1, j: 2, k: 3 }));
    }

    #[test]
    fn bracket_examples() {
        let h3 = catalog::h3();
        assert_eq!(h3.bracket(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap(), v(&[0, 0, 1]));
        assert_eq!(h3.bracket(&v(&[0, 1, 0]), &v(&[1, 0, 0])).unwrap(), v(&[0, 0, -1]));
        let x = v(&[3, -2, 7]);
        assert!(h3.bracket(&x, &x).unwrap().is_zero());
        assert!(matches!(
            h3.bracket(&v(&[1, 0]), &x),
            Err(Error::AlgebraMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let h3 = catalog::h3();
        assert!(h3.ad_matrix(&v(&[0, 0, 1])).unwrap().is_zero());
        let ad1 = h3.ad_matrix(&v(&[1, 0, 0])).unwrap();
        let mut expected = Matrix::zeros(3, 3);
        expected[(2, 1)] = int(1);
        assert_eq!(ad1, expected);

        assert_eq!(h3.ad_exp(&v(&[0, 0, 0])).unwrap(), Matrix::identity(3));
        let a = h3.ad_exp(&v(&[1, 0, 0])).unwrap();
        assert_eq!(a.column(1), vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn coadjoint_examples() {
        let h3 = catalog::h3();
        let l = Covector(vec![int(0), int(0), int(1)]);
        assert_eq!(h3.coadjoint(&v(&[0, 0, 0]), &l).unwrap(), l);
        let t = rat(5, 3);
        let moved = h3
            .coadjoint(&Vector(vec![t.clone(), int(0), int(0)]), &l)
            .unwrap();
        assert_eq!(moved, Covector(vec![int(0), -t, int(1)]));
    }

    #[test]
    fn bch_examples() {
        let h3 = catalog::h3();
        let x = v(&[4, -1, 2]);
        assert_eq!(h3.bch(&x, &v(&[0, 0, 0])).unwrap(), x);
        assert!(h3.bch(&x, &x.neg()).unwrap().is_zero());
        let (a, b) = (rat(2, 3), rat(-5, 7));
        let z = h3
            .bch(
                &Vector(vec![a.clone(), int(0), int(0)]),
                &Vector(vec![int(0), b.clone(), int(0)]),
            )
            .unwrap();
        assert_eq!(z, Vector(vec![a.clone(), b.clone(), a * b / int(2)]));
    }

    #[test]
    fn step_bounds() {
        assert_eq!(catalog::abelian(3).step_bound(), 1);
        assert_eq!(catalog::h3().step_bound(), 2);
        assert_eq!(catalog::f4().step_bound(), 3);
        assert_eq!(catalog::f4().lower_central_series(), vec![4, 2, 1, 0]);
    }
}
