//! Fourier inversion on `H3` over the generic layer `{λ Z3* : λ ≠ 0}`.
//!
//! With `X(x) = exp(x Z1)` and `π_λ` induced from `P = exp span{Z2, Z3}`,
//!
//! ```text
//! R(F)(g) = κ ∫_{|λ|>ε} tr(π_λ(g)⁻¹ ∘ op_F(λ)) |λ| dλ,
//! tr(π_λ(g)⁻¹ ∘ op_F(λ)) = ∫ F(λ; g·X(x), X(x)) dx.
//! ```
//!
//! The `x` integral is taken in `u = λ (x + g1/2)`, which absorbs `|λ|`
//! and keeps the window finite as `λ → 0`. Because `Z3` is central the
//! inner `c` integral is shared by every `x`, so each `g` costs a handful
//! of dense three-index sums.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::NilpotentLieAlgebra;

use super::function::TestFunction;
use super::heisenberg::{inv, mul, require_h3, Point};
use super::kernel::QuadratureConfig;
use super::quadrature::{gauss_legendre, Rule};

/// Normalization of Lebesgue measures in exponential coordinates; the
/// trapezoidal calibration on the standard Gaussian lands on `(2π)⁻²`.
pub const KAPPA: f64 = 1.0 / (4.0 * std::f64::consts::PI * std::f64::consts::PI);

#[derive(Clone, Debug, PartialEq)]
pub struct NodeCounts {
    pub lambda: usize,
    pub u: usize,
    pub b: usize,
    pub c: usize,
}

struct Rules {
    lambda: Rule,
    u: Rule,
    b: Rule,
    c: Rule,
}

fn rules(f: &TestFunction, g: &Point, cfg: &QuadratureConfig, order: usize) -> Rules {
    let w = f.min_width();
    let k = cfg.sigmas;
    let bounds = f.bounds(k);
    let (xs, ws) = gauss_legendre(order);
    let lam_max = cfg.lambda_max.unwrap_or(k / w);
    let u_max = k / w;
    let (lo2, hi2) = (bounds[1].0 - g[1], bounds[1].1 - g[1]);
    let (lo3, hi3) = bounds[2];
    let len2 = hi2 - lo2;
    let len3 = hi3 - lo3;
    // λ and u see the phases e^{-iλc} and e^{iub}; b and c see the reverse.
    let side = Rule::composite_with(cfg.lambda_cut, lam_max, cfg.panels(lam_max, len3, 1.0 / w), &xs, &ws);
    let mut lambda = Rule {
        nodes: side.nodes.iter().rev().map(|x| -x).collect(),
        weights: side.weights.iter().rev().copied().collect(),
    };
    lambda.nodes.extend(&side.nodes);
    lambda.weights.extend(&side.weights);
    Rules {
        lambda,
        u: Rule::composite_with(-u_max, u_max, cfg.panels(2.0 * u_max, len2, 1.0 / w), &xs, &ws),
        b: Rule::composite_with(lo2, hi2, cfg.panels(len2, u_max, w), &xs, &ws),
        c: Rule::composite_with(lo3, hi3, cfg.panels(len3, lam_max, w), &xs, &ws),
    }
}

/// `S(λ) = |λ| tr(π_λ(g)⁻¹ ∘ op_F(λ))` at every node of `lambdas`.
fn weighted_traces(f: &TestFunction, g: &Point, r: &Rules, lambdas: &[f64]) -> Vec<Complex64> {
    // Row per b node: the point g·exp(b Z2) and f along its Z3 line.
    let rows: Vec<(Point, Vec<f64>)> = r
        .b
        .nodes
        .iter()
        .map(|&b| {
            let q = mul(g, &[0.0, b, 0.0]);
            let fv = r.c.nodes.iter().map(|&c| f.eval(&[q[0], q[1], c])).collect();
            (q, fv)
        })
        .collect();
    // X(x)·exp(b Z2)·X(x)⁻¹ = exp(b Z2 + x b Z3), so the phase of the b sum is
    // (u + β(λ)) b and the e^{iub} factors form one λ-independent table.
    let table: Vec<Vec<Complex64>> = r
        .u
        .nodes
        .iter()
        .map(|&u| {
            r.b.nodes
                .iter()
                .zip(&r.b.weights)
                .map(|(&b, &wb)| Complex64::from_polar(wb, u * b))
                .collect()
        })
        .collect();
    lambdas
        .iter()
        .map(|&lam| {
            let phase_c: Vec<Complex64> = r.c.nodes.iter().map(|&c| Complex64::from_polar(1.0, -lam * c)).collect();
            let beta = lam * shear(g, -g[0] / 2.0);
            // H(b) = ∫ f(g·exp(b Z2 + c Z3)) e^{-iλc} dc, times e^{iβb}.
            let h: Vec<Complex64> = rows
                .iter()
                .zip(&r.b.nodes)
                .map(|((q, fv), &b)| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for ((v, wc), ph) in fv.iter().zip(&r.c.weights).zip(&phase_c) {
                        if *v != 0.0 {
                            acc += ph * (wc * v);
                        }
                    }
                    acc * Complex64::from_polar(1.0, lam * q[2] + beta * b)
                })
                .collect();
            let mut total = Complex64::new(0.0, 0.0);
            for (row, &wu) in table.iter().zip(&r.u.weights) {
                let inner: Complex64 = row.iter().zip(&h).map(|(e, hb)| e * hb).sum();
                total += inner * wu;
            }
            total
        })
        .collect()
}

/// Z3 coordinate of `g·X(x)·exp(Z2)·X(x)⁻¹` minus that of `g·exp(Z2)`.
fn shear(g: &Point, x: f64) -> f64 {
    let cx = [x, 0.0, 0.0];
    mul(&mul(&mul(g, &cx), &[0.0, 1.0, 0.0]), &inv(&cx))[2] - mul(g, &[0.0, 1.0, 0.0])[2]
}

fn reconstruct_at(f: &TestFunction, g: &Point, cfg: &QuadratureConfig, order: usize) -> (Complex64, f64, NodeCounts) {
    let r = rules(f, g, cfg, order);
    let s = weighted_traces(f, g, &r, &r.lambda.nodes);
    let integral: Complex64 = s.iter().zip(&r.lambda.weights).map(|(v, w)| v * *w).sum();
    let eps = cfg.lambda_cut;
    let cut = if eps > 0.0 {
        let edge = weighted_traces(f, g, &r, &[-eps, eps]);
        2.0 * eps * KAPPA * edge[0].norm().max(edge[1].norm())
    } else {
        0.0
    };
    let counts = NodeCounts {
        lambda: r.lambda.len(),
        u: r.u.len(),
        b: r.b.len(),
        c: r.c.len(),
    };
    (integral * KAPPA, cut, counts)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionSample {
    pub g: Point,
    pub f: f64,
    pub reconstructed: f64,
    /// Imaginary part of the reconstruction; zero up to quadrature error.
    pub imaginary: f64,
    pub error: f64,
    /// `|R_order - R_reference|`.
    pub quadrature_estimate: f64,
    /// Bound on the contribution of `|λ| < ε`.
    pub cut_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InversionReport {
    pub kappa: f64,
    pub config: QuadratureConfig,
    pub nodes: NodeCounts,
    pub samples: Vec<InversionSample>,
}

impl InversionReport {
    pub fn max_error(&self) -> f64 {
        self.samples.iter().map(|s| s.error).fold(0.0, f64::max)
    }

    pub fn max_estimate(&self) -> f64 {
        self.samples.iter().map(|s| s.quadrature_estimate).fold(0.0, f64::max)
    }
}

/// Reconstructs `f` at each point. With `tolerance`, every sample's
/// quadrature estimate must satisfy `estimate <= tolerance · (1 + |f(g)|)`.
pub fn inversion(
    alg: &NilpotentLieAlgebra,
    f: &TestFunction,
    points: &[Point],
    cfg: &QuadratureConfig,
    tolerance: Option<f64>,
) -> Result<InversionReport> {
    require_h3(alg)?;
    cfg.validate()?;
    let results: Vec<(InversionSample, NodeCounts)> = points
        .par_iter()
        .map(|g| {
            let exact = f.eval(g);
            if f.is_zero() {
                let counts = NodeCounts { lambda: 0, u: 0, b: 0, c: 0 };
                let s = InversionSample {
                    g: *g,
                    f: exact,
                    reconstructed: 0.0,
                    imaginary: 0.0,
                    error: exact.abs(),
                    quadrature_estimate: 0.0,
                    cut_bound: 0.0,
                };
                return (s, counts);
            }
            let (v, cut, counts) = reconstruct_at(f, g, cfg, cfg.order);
            let reference = if cfg.reference_order == cfg.order {
                v
            } else {
                reconstruct_at(f, g, cfg, cfg.reference_order).0
            };
            let s = InversionSample {
                g: *g,
                f: exact,
                reconstructed: v.re,
                imaginary: v.im,
                error: (v.re - exact).abs(),
                quadrature_estimate: (v - reference).norm() + cut,
                cut_bound: cut,
            };
            (s, counts)
        })
        .collect();
    let nodes = results
        .first()
        .map(|r| r.1.clone())
        .unwrap_or(NodeCounts { lambda: 0, u: 0, b: 0, c: 0 });
    let samples: Vec<InversionSample> = results.into_iter().map(|r| r.0).collect();
    if let Some(tol) = tolerance {
        let worst = samples
            .iter()
            .map(|s| s.quadrature_estimate / (1.0 + s.f.abs()))
            .fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::QuadratureBudgetExceeded {
                requested: tol,
                achieved: worst,
            });
        }
    }
    Ok(InversionReport {
        kappa: KAPPA,
        config: cfg.clone(),
        nodes,
        samples,
    })
}

/// `f(e) / ∫ S(λ) dλ` for the standard Gaussian with the library rules.
pub fn calibrate_kappa(cfg: &QuadratureConfig) -> f64 {
    let f = TestFunction::gaussian([0.0; 3], 1.0).expect("standard Gaussian");
    let (v, _, _) = reconstruct_at(&f, &[0.0; 3], cfg, cfg.order);
    KAPPA / v.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn standard_gaussian_at_identity() {
        let f = TestFunction::gaussian([0.0; 3], 1.0).unwrap();
        let r = inversion(&catalog::h3(), &f, &[[0.0; 3]], &QuadratureConfig::default(), Some(1e-6)).unwrap();
        let s = &r.samples[0];
        assert!(s.error < 1e-9, "{s:?}");
        assert!(s.imaginary.abs() < 1e-9);
        assert!(s.cut_bound < 1e-9);
        assert!((calibrate_kappa(&QuadratureConfig::default()) - KAPPA).abs() < 1e-10);
    }

    #[test]
    fn zero_function() {
        let r = inversion(
            &catalog::h3(),
            &TestFunction::zero(),
            &[[0.0; 3], [1.0, 2.0, 3.0]],
            &QuadratureConfig::default(),
            None,
        )
        .unwrap();
        assert!(r.samples.iter().all(|s| s.reconstructed == 0.0));
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        let f = TestFunction::gaussian([0.0; 3], 1.0).unwrap();
        let cfg = QuadratureConfig::default().with_order(4);
        let err = inversion(&catalog::h3(), &f, &[[0.3, 0.0, 0.0]], &cfg, Some(1e-12)).unwrap_err();
        assert!(matches!(err, Error::QuadratureBudgetExceeded { .. }));
        assert_eq!(
            inversion(&catalog::f4(), &f, &[[0.0; 3]], &cfg, None).unwrap_err(),
            Error::NotHeisenberg
        );
    }
}
