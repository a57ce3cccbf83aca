//! Coadjoint flows, Pukanszky-section representatives and orbit charts.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Covector, LieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunction;
use crate::scalar::{inverse_factorial, solve_affine, ExactField, Rational, Scalar};
use crate::stratification::{index_of, IndexSet};
use crate::NilpotentLieAlgebra;

/// `Ad*(exp(param · Z_label))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Move<F = Rational> {
    pub label: usize,
    pub param: F,
}

/// A product of one-parameter flows, written left to right; the leftmost
/// factor acts last.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowSchedule<F = Rational> {
    pub moves: Vec<Move<F>>,
}

impl<F: Scalar> FlowSchedule<F> {
    pub fn identity() -> Self {
        FlowSchedule { moves: Vec::new() }
    }

    /// `exp(s_1 Z_{j_1}) exp(t_1 Z_{k_1}) ... exp(s_r Z_{j_r}) exp(t_r Z_{k_r})`
    /// with `params = (s_1, t_1, ..., s_r, t_r)`.
    pub fn e_map(index: &IndexSet, params: &[F]) -> Result<Self> {
        if params.len() != index.size() {
            return Err(Error::ArityMismatch {
                expected: index.size(),
                found: params.len(),
            });
        }
        Ok(FlowSchedule {
            moves: index
                .flattened()
                .into_iter()
                .zip(params)
                .map(|(label, p)| Move {
                    label,
                    param: p.clone(),
                })
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        FlowSchedule {
            moves: self
                .moves
                .iter()
                .rev()
                .map(|m| Move {
                    label: m.label,
                    param: -m.param.clone(),
                })
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.moves.iter().all(|m| m.param.is_zero())
    }
}

pub fn flow<F: Scalar>(alg: &LieAlgebra<F>, l: &Covector<F>, schedule: &FlowSchedule<F>) -> Result<Covector<F>> {
    alg.check_dim(l.len())?;
    let n = alg.dim();
    let mut cur = l.clone();
    for m in schedule.moves.iter().rev() {
        if m.label == 0 || m.label > n {
            return Err(Error::InvalidInput(format!("flow label {} out of range 1..={n}", m.label)));
        }
        if m.param.is_zero() {
            continue;
        }
        cur = alg.coadjoint(&Vector::basis(n, m.label).scale(&m.param), &cur)?;
    }
    Ok(cur)
}

/// Coefficients `a_m` of `t ↦ ⟨Ad*(exp(t Z_flow)) l, Z_target⟩ = Σ a_m t^m`.
fn flow_coefficients<F: ExactField>(alg: &LieAlgebra<F>, l: &Covector<F>, flow_label: usize, target: usize) -> Vec<F> {
    let n = alg.dim();
    let z = Vector::<F>::basis(n, flow_label);
    let mut v = Vector::<F>::basis(n, target).0;
    let mut out = Vec::new();
    let mut m = 0;
    while !v.iter().all(Zero::is_zero) {
        let sign = if m % 2 == 0 { F::one() } else { -F::one() };
        out.push(sign * F::from_rational(&inverse_factorial(m)) * l.pair(&v));
        v = alg.bracket_coords(&z, &v);
        m += 1;
    }
    out
}

/// Runs the paired solves of the section construction, sending the
/// coordinate at each label of `index` to `target(label)`. Returns the end
/// point and the moves in written order. `vanishes` is the zero test used
/// for the affine, slope and preservation checks.
fn sequential_solve<F: ExactField>(
    alg: &LieAlgebra<F>,
    l: &Covector<F>,
    index: &IndexSet,
    target: impl Fn(usize) -> F,
    vanishes: impl Fn(&F) -> bool,
) -> Result<(Covector<F>, FlowSchedule<F>)> {
    let n = alg.dim();
    let mut cur = l.clone();
    let mut applied: Vec<Move<F>> = Vec::new();
    let mut fixed: Vec<usize> = Vec::new();
    for (s, &(j, k)) in index.pairs().iter().enumerate() {
        let step = s + 1;
        for (flow_label, goal) in [(k, j), (j, k)] {
            let a = flow_coefficients(alg, &cur, flow_label, goal);
            let coef = |m: usize| a.get(m).cloned().unwrap_or_else(F::zero);
            if a.iter().skip(2).any(|x| !vanishes(x)) {
                return Err(Error::SectionSolveInvariantViolation {
                    step,
                    label: goal,
                    detail: format!("coordinate {goal} is not affine along Z{flow_label}"),
                });
            }
            let slope = if vanishes(&coef(1)) { F::zero() } else { coef(1) };
            let t = solve_affine(&slope, &coef(0), &target(goal)).map_err(|_| {
                Error::SectionSolveInvariantViolation {
                    step,
                    label: goal,
                    detail: format!("coordinate {goal} does not move along Z{flow_label}"),
                }
            })?;
            cur = alg.coadjoint(&Vector::basis(n, flow_label).scale(&t), &cur)?;
            fixed.push(goal);
            for &f in &fixed {
                if !vanishes(&(cur.at(f).clone() - target(f))) {
                    return Err(Error::SectionSolveInvariantViolation {
                        step,
                        label: f,
                        detail: format!("flow along Z{flow_label} disturbed coordinate {f}"),
                    });
                }
            }
            applied.push(Move {
                label: flow_label,
                param: t,
            });
        }
    }
    applied.reverse();
    Ok((cur, FlowSchedule { moves: applied }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionPoint {
    pub index_set: IndexSet,
    pub l_section: Covector<Rational>,
    /// Carries the input to `l_section`; its inverse carries it back.
    pub schedule: FlowSchedule,
}

/// The representative of the orbit of `l` in the Pukanszky section of its layer.
pub fn section_point(alg: &NilpotentLieAlgebra, l: &Covector<Rational>) -> Result<SectionPoint> {
    let index_set = index_of(alg, l)?;
    let (l_section, schedule) = sequential_solve(alg, l, &index_set, |_| Rational::zero(), Zero::is_zero)?;
    Ok(SectionPoint {
        index_set,
        l_section,
        schedule,
    })
}

pub fn same_orbit(alg: &NilpotentLieAlgebra, l: &Covector<Rational>, lp: &Covector<Rational>) -> Result<bool> {
    alg.check_dim(lp.len())?;
    let a = section_point(alg, l)?;
    let b = section_point(alg, lp)?;
    Ok(a.index_set == b.index_set && a.l_section == b.l_section)
}

/// `Ω_l = {Σ p_i(l, z) Z_i*}`: the unique orbit point whose coordinates at
/// the labels of `I` (ascending) are `z_1, ..., z_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitChart {
    pub index_set: IndexSet,
    pub base: Covector<Rational>,
    /// `l1..ln, z1..zd`.
    pub ring: Arc<[String]>,
    /// Label carrying `z_{j+1}` at position `j`.
    pub z_labels: Vec<usize>,
    pub functions: Vec<RatFunction>,
}

impl OrbitChart {
    pub fn dim(&self) -> usize {
        self.z_labels.len()
    }

    fn n(&self) -> usize {
        self.base.len()
    }

    /// The chart point at `z`.
    pub fn evaluate(&self, z: &[Rational]) -> Result<Covector<Rational>> {
        if z.len() != self.dim() {
            return Err(Error::ArityMismatch {
                expected: self.dim(),
                found: z.len(),
            });
        }
        let point: Vec<Rational> = self.base.iter().chain(z).cloned().collect();
        Ok(Covector(
            self.functions.iter().map(|p| p.eval(&point)).collect::<Result<_>>()?,
        ))
    }

    /// Positions `j` (0-based) of the `z_j` that entry `label` depends on.
    pub fn z_dependencies(&self, label: usize) -> Vec<usize> {
        let p = &self.functions[label - 1];
        (0..self.dim()).filter(|&j| p.depends_on(self.n() + j)).collect()
    }

    /// No denominator involves a `z` variable.
    pub fn is_polynomial_in_z(&self) -> bool {
        let n = self.n();
        self.functions
            .iter()
            .all(|p| (0..self.dim()).all(|j| !p.denominator().depends_on(n + j)))
    }

    /// Entry `i_j` is exactly `z_j`, and an entry at a label outside `I`
    /// involves only the `z` attached to larger labels.
    pub fn shape_holds(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| match self.z_labels.iter().position(|&x| x == i) {
            Some(j) => self.functions[i - 1] == RatFunction::var(&self.ring, n + j),
            None => self.z_dependencies(i).iter().all(|&j| self.z_labels[j] > i),
        })
    }
}

pub fn orbit_chart(alg: &NilpotentLieAlgebra, l: &Covector<Rational>) -> Result<OrbitChart> {
    let index_set = index_of(alg, l)?;
    let n = alg.dim();
    let z_labels = index_set.sorted_labels();
    let names: Vec<String> = (1..=n)
        .map(|i| format!("l{i}"))
        .chain((1..=z_labels.len()).map(|j| format!("z{j}")))
        .collect();
    let ring: Arc<[String]> = names.into();
    let sym = alg.cast::<RatFunction>();
    // Coordinates that vanish at the base stay zero symbolically; every other
    // zero test is taken after substituting the base, since the chart only
    // describes the orbit through `l`.
    let start = Covector(
        (0..n)
            .map(|i| {
                if l.0[i].is_zero() {
                    RatFunction::zero()
                } else {
                    RatFunction::var(&ring, i)
                }
            })
            .collect(),
    );
    let at_base: Vec<MultiPoly> = (0..ring.len())
        .map(|i| match l.0.get(i) {
            Some(v) => MultiPoly::constant(v.clone()).embed(&ring),
            None => MultiPoly::var(&ring, i),
        })
        .collect();
    let vanishes = |f: &RatFunction| f.numerator().eval(&at_base).is_ok_and(|v| v.is_zero());
    let (end, _) = sequential_solve(
        &sym,
        &start,
        &index_set,
        |label| {
            let j = z_labels.iter().position(|&x| x == label).expect("label of I");
            RatFunction::var(&ring, n + j)
        },
        vanishes,
    )?;
    Ok(OrbitChart {
        index_set,
        base: l.clone(),
        ring,
        z_labels,
        functions: end.0,
    })
}
