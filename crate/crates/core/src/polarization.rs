//! The Ludwig-Zahir index algorithm and Vergne polarizations.
//!
//! Every adapted basis keeps the original labels of the vectors that survive,
//! so the pairs `(j_s, k_s)` are always reported in terms of `Z1..Zn`.

use crate::algebra::{Covector, LieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::ExactField;
use crate::stratification::IndexSet;
use crate::subspace::Subspace;

/// A basis vector of an adapted basis together with its original label.
#[derive(Clone, Debug, PartialEq)]
pub struct Labelled<F> {
    pub label: usize,
    pub vector: Vector<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LZStep<F> {
    pub j: usize,
    pub k: usize,
    /// Current basis vector at label `k`.
    pub x: Vector<F>,
    /// Current basis vector at label `j`.
    pub y: Vector<F>,
    /// `⟨l, [X, Y]⟩`, never zero.
    pub c: F,
    pub next_basis: Vec<Labelled<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LZTrace<F> {
    pub l: Covector<F>,
    pub steps: Vec<LZStep<F>>,
    pub index_set: IndexSet,
    pub polarization: Subspace<F>,
    pub stabilizer: Subspace<F>,
}

impl<F: ExactField> LZTrace<F> {
    pub fn final_basis(&self) -> Vec<Labelled<F>> {
        match self.steps.last() {
            Some(s) => s.next_basis.clone(),
            None => standard_basis(self.l.len()),
        }
    }
}

fn standard_basis<F: ExactField>(n: usize) -> Vec<Labelled<F>> {
    (1..=n)
        .map(|label| Labelled {
            label,
            vector: Vector::basis(n, label),
        })
        .collect()
}

/// `⟨l, [u, v]⟩`.
pub fn form<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, u: &[F], v: &[F]) -> F {
    l.pair(&alg.bracket_coords(u, v))
}

/// The matrix `B_l` with entries `⟨l, [v_a, v_b]⟩` over the given vectors.
pub fn form_matrix<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, vs: &[Vec<F>]) -> Matrix<F> {
    let m = vs.len();
    let mut out = Matrix::zeros(m, m);
    for a in 0..m {
        for b in a + 1..m {
            let v = form(alg, l, &vs[a], &vs[b]);
            out[(b, a)] = -v.clone();
            out[(a, b)] = v;
        }
    }
    out
}

fn std_vectors<F: ExactField>(n: usize) -> Vec<Vec<F>> {
    (1..=n).map(|i| Vector::<F>::basis(n, i).0).collect()
}

/// Null space of `m` (rows × cols), safe for zero rows.
fn kernel<F: ExactField>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    if m.rows() == 0 {
        return std_vectors(cols);
    }
    m.kernel_basis()
}

fn combine<F: ExactField>(coeffs: &[F], vs: &[Vec<F>], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (c, v) in coeffs.iter().zip(vs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

/// Vectors `U` in the span of `vs` with `⟨l, [U, v]⟩ = 0` for every `v` in `vs`.
fn radical<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, vs: &[Vec<F>]) -> Subspace<F> {
    let n = alg.dim();
    let m = form_matrix(alg, l, vs);
    let ker = kernel(&m, vs.len());
    Subspace::span(n, ker.iter().map(|c| combine(c, vs, n)))
}

/// `{U : ⟨l, [U, Z_j]⟩ = 0 for all j}`.
pub fn stabilizer<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>) -> Result<Subspace<F>> {
    alg.check_dim(l.len())?;
    Ok(radical(alg, l, &std_vectors(alg.dim())))
}

/// Largest subspace of `s` stable under `ad v` for every `v` in `gens`.
fn largest_stable<F: ExactField>(alg: &LieAlgebra<F>, gens: &[Vec<F>], s: &Subspace<F>) -> Subspace<F> {
    let n = alg.dim();
    let mut cur = s.clone();
    while cur.dim() > 0 {
        let ann = cur.annihilator();
        let basis = cur.basis().to_vec();
        let mut rows = Vec::new();
        for g in gens {
            let images: Vec<Vec<F>> = basis.iter().map(|b| alg.bracket_coords(g, b)).collect();
            for q in &ann {
                let row: Vec<F> = images
                    .iter()
                    .map(|im| {
                        q.iter()
                            .zip(im)
                            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                            .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            break;
        }
        let ker = Matrix::from_rows(rows).kernel_basis();
        let next = Subspace::span(n, ker.iter().map(|c| combine(c, &basis, n)));
        if next.dim() == cur.dim() {
            break;
        }
        cur = next;
    }
    cur
}

/// The largest ideal of `g` contained in `s`.
pub fn maximal_ideal_in<F: ExactField>(alg: &LieAlgebra<F>, s: &Subspace<F>) -> Result<Subspace<F>> {
    alg.check_dim(s.ambient())?;
    Ok(largest_stable(alg, &std_vectors(alg.dim()), s))
}

/// One reduction step: returns the step record given the chosen labels.
fn reduce_step<F: ExactField>(
    alg: &LieAlgebra<F>,
    l: &Covector<F>,
    basis: &[Labelled<F>],
    j: usize,
    k: usize,
    c: F,
) -> LZStep<F> {
    let y = basis.iter().find(|b| b.label == j).expect("label j").vector.clone();
    let x = basis.iter().find(|b| b.label == k).expect("label k").vector.clone();
    let next_basis = basis
        .iter()
        .filter(|b| b.label != k)
        .map(|b| {
            let f = form(alg, l, &b.vector, &y);
            let vector = if f.is_zero() {
                b.vector.clone()
            } else {
                b.vector.sub(&x.scale(&(f / c.clone())))
            };
            Labelled {
                label: b.label,
                vector,
            }
        })
        .collect();
    LZStep {
        j,
        k,
        x,
        y,
        c,
        next_basis,
    }
}

fn finish<F: ExactField>(
    alg: &LieAlgebra<F>,
    l: &Covector<F>,
    steps: Vec<LZStep<F>>,
) -> Result<LZTrace<F>> {
    let n = alg.dim();
    let final_vectors: Vec<Vec<F>> = match steps.last() {
        Some(s) => s.next_basis.iter().map(|b| b.vector.0.clone()).collect(),
        None => std_vectors(n),
    };
    let index_set = IndexSet::new(steps.iter().map(|s| (s.j, s.k)).collect())?;
    Ok(LZTrace {
        l: l.clone(),
        index_set,
        polarization: Subspace::span(n, final_vectors),
        stabilizer: stabilizer(alg, l)?,
        steps,
    })
}

/// Runs the Ludwig-Zahir algorithm at `l`.
pub fn ludwig_zahir<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>) -> Result<LZTrace<F>> {
    alg.check_dim(l.len())?;
    let n = alg.dim();
    let mut basis = standard_basis::<F>(n);
    let mut steps = Vec::new();
    loop {
        let vs: Vec<Vec<F>> = basis.iter().map(|b| b.vector.0.clone()).collect();
        let m = form_matrix(alg, l, &vs);
        if m.is_zero() {
            break;
        }
        let stab = Subspace::span(n, kernel(&m, vs.len()).iter().map(|c| combine(c, &vs, n)));
        let ideal = largest_stable(alg, &vs, &stab);
        let ja = (0..basis.len())
            .rev()
            .find(|&a| !ideal.contains(&basis[a].vector))
            .expect("the form is nonzero, so some basis vector leaves the ideal");
        let kb = (0..basis.len())
            .rev()
            .find(|&b| !m[(ja, b)].is_zero())
            .expect("a vector outside the stabilizer pairs with some basis vector");
        // c = ⟨l, [X, Y]⟩ with X = B_k, Y = B_j.
        let c = -m[(ja, kb)].clone();
        let step = reduce_step(alg, l, &basis, basis[ja].label, basis[kb].label, c);
        basis = step.next_basis.clone();
        steps.push(step);
    }
    finish(alg, l, steps)
}

/// Runs the reduction with the pairs of `index` imposed instead of chosen.
pub fn forced_run<F: ExactField>(
    alg: &LieAlgebra<F>,
    l: &Covector<F>,
    index: &IndexSet,
) -> Result<LZTrace<F>> {
    alg.check_dim(l.len())?;
    let mut basis = standard_basis::<F>(alg.dim());
    let mut steps = Vec::new();
    for (s, &(j, k)) in index.pairs().iter().enumerate() {
        let step_no = s + 1;
        let find = |label: usize| basis.iter().find(|b| b.label == label).map(|b| b.vector.clone());
        let (Some(y), Some(x)) = (find(j), find(k)) else {
            return Err(Error::InconsistentIndexSet {
                step: step_no,
                reason: format!("label {j} or {k} is not in the current basis"),
            });
        };
        let c = form(alg, l, &x, &y);
        if c.is_zero() {
            return Err(Error::InconsistentIndexSet {
                step: step_no,
                reason: format!("⟨l,[Z{k},Z{j}]⟩ vanishes identically"),
            });
        }
        let step = reduce_step(alg, l, &basis, j, k, c);
        basis = step.next_basis.clone();
        steps.push(step);
    }
    finish(alg, l, steps)
}

/// `Σ_k g_k(l_k)` with `g_k = span{Z_k, ..., Z_n}`.
pub fn vergne_polarization<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>) -> Result<Subspace<F>> {
    alg.check_dim(l.len())?;
    let n = alg.dim();
    let all = std_vectors::<F>(n);
    let mut total = Subspace::zero(n);
    for k in 0..n {
        total = total.sum(&radical(alg, l, &all[k..]));
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationCheck<F> {
    pub agree: bool,
    pub ludwig_zahir: Subspace<F>,
    pub vergne: Subspace<F>,
}

pub fn crosscheck_polarizations<F: ExactField>(
    alg: &LieAlgebra<F>,
    l: &Covector<F>,
) -> Result<PolarizationCheck<F>> {
    let lz = ludwig_zahir(alg, l)?.polarization;
    let vergne = vergne_polarization(alg, l)?;
    Ok(PolarizationCheck {
        agree: lz == vergne,
        ludwig_zahir: lz,
        vergne,
    })
}

/// Whether `⟨l, [u, v]⟩ = 0` for all `u, v` in `p`.
pub fn is_isotropic<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, p: &Subspace<F>) -> bool {
    form_matrix(alg, l, p.basis()).is_zero()
}

pub fn is_subalgebra<F: ExactField>(alg: &LieAlgebra<F>, p: &Subspace<F>) -> bool {
    let b = p.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| p.contains(&alg.bracket_coords(&b[i], &b[j]))))
}

/// No `Z_i` outside `p` can be added to `p` keeping it isotropic.
pub fn is_maximal_isotropic<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, p: &Subspace<F>) -> bool {
    let n = alg.dim();
    (1..=n).all(|i| {
        let z = Vector::<F>::basis(n, i).0;
        p.contains(&z) || !is_isotropic(alg, l, &p.sum(&Subspace::span(n, [z])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{int, Rational};
    use num_traits::Zero;

    fn cov(xs: &[i64]) -> Covector<Rational> {
        Covector(xs.iter().map(|&x| int(x)).collect())
    }

    fn span(n: usize, labels: &[usize]) -> Subspace<Rational> {
        Subspace::span(n, labels.iter().map(|&i| Vector::<Rational>::basis(n, i).0))
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer(&catalog::h3(), &cov(&[0, 0, 1])).unwrap(), span(3, &[3]));
        let ab = catalog::abelian(4);
        assert_eq!(stabilizer(&ab, &cov(&[1, 2, 3, 4])).unwrap(), ab.whole());
        assert_eq!(stabilizer(&catalog::f4(), &cov(&[0, 0, 0, 1])).unwrap(), span(4, &[2, 4]));
    }

    #[test]
    fn maximal_ideal_examples() {
        let h3 = catalog::h3();
        assert_eq!(maximal_ideal_in(&h3, &span(3, &[3])).unwrap(), span(3, &[3]));
        let f4 = catalog::f4();
        assert_eq!(maximal_ideal_in(&f4, &span(4, &[2, 4])).unwrap(), span(4, &[4]));
        assert_eq!(maximal_ideal_in(&f4, &f4.whole()).unwrap(), f4.whole());
    }

    #[test]
    fn index_examples() {
        let ab = catalog::abelian(3);
        let t = ludwig_zahir(&ab, &cov(&[4, -1, 2])).unwrap();
        assert!(t.index_set.is_empty());
        assert_eq!(t.polarization, ab.whole());

        let t = ludwig_zahir(&catalog::h3(), &cov(&[0, 0, 1])).unwrap();
        assert_eq!(t.index_set.pairs(), &[(2, 1)]);
        assert_eq!(t.steps[0].c, int(1));
        assert_eq!(t.polarization, span(3, &[2, 3]));

        let t = ludwig_zahir(&catalog::f4(), &cov(&[0, 0, 0, 1])).unwrap();
        assert_eq!(t.index_set.pairs(), &[(3, 1)]);
        assert_eq!(t.polarization, span(4, &[2, 3, 4]));
    }

    #[test]
    fn h5_generic_index() {
        let t = ludwig_zahir(&catalog::h5(), &cov(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(t.index_set.pairs(), &[(4, 3), (2, 1)]);
        assert_eq!(t.polarization, vergne_polarization(&catalog::h5(), &t.l).unwrap());
    }

    #[test]
    fn next_basis_is_orthogonal_to_y() {
        let f4 = catalog::f4();
        let l = cov(&[3, -2, 5, 7]);
        let t = ludwig_zahir(&f4, &l).unwrap();
        for s in &t.steps {
            assert!(!s.c.is_zero());
            for b in &s.next_basis {
                assert!(form(&f4, &l, &b.vector, &s.y).is_zero());
            }
        }
    }

    #[test]
    fn vergne_examples() {
        let h3 = catalog::h3();
        assert_eq!(vergne_polarization(&h3, &cov(&[0, 0, 1])).unwrap(), span(3, &[2, 3]));
        assert_eq!(vergne_polarization(&h3, &cov(&[1, 0, 0])).unwrap(), h3.whole());
        let ab = catalog::abelian(5);
        assert_eq!(vergne_polarization(&ab, &cov(&[1, 1, 1, 1, 1])).unwrap(), ab.whole());
        assert!(crosscheck_polarizations(&h3, &cov(&[0, 0, 1])).unwrap().agree);
    }

    #[test]
    fn forced_runs() {
        let h3 = catalog::h3();
        let bad = IndexSet::new(vec![(3, 1)]).unwrap();
        assert!(matches!(
            forced_run(&h3, &cov(&[0, 0, 1]), &bad),
            Err(Error::InconsistentIndexSet { step: 1, .. })
        ));
        let good = IndexSet::new(vec![(2, 1)]).unwrap();
        let t = forced_run(&h3, &cov(&[0, 0, 1]), &good).unwrap();
        assert_eq!(t, ludwig_zahir(&h3, &cov(&[0, 0, 1])).unwrap());
    }
}
