//! Operator kernels `F(l, g, u) = ∫_P f(g h u⁻¹) χ_l(h) dh` on `H3`, with
//! `P = exp span{Z2, Z3}` and Lebesgue measure in exponential coordinates.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::NilpotentLieAlgebra;

use super::function::TestFunction;
use super::heisenberg::{inv, mul, require_h3, Point};
use super::quadrature::{gauss_legendre, Rule};

/// Quadrature settings shared by kernels and the inversion.
///
/// Every window is the envelope box of the test function widened to
/// `sigmas` widths; frequency windows are `±sigmas / w` for the narrowest
/// width `w`. Panel counts follow from the phase each panel has to resolve.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub sigmas: f64,
    /// Panels per `sigmas` radians of phase.
    pub panel_density: f64,
    /// Gauss-Legendre nodes per panel.
    pub order: usize,
    /// Order of the comparison rule behind every error estimate.
    pub reference_order: usize,
    /// Radius of the excluded neighbourhood of `λ = 0`.
    pub lambda_cut: f64,
    /// Half-length of the `λ` window; defaults to `sigmas / w`.
    pub lambda_max: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            sigmas: 8.5,
            panel_density: 1.0,
            order: 12,
            reference_order: 16,
            lambda_cut: 1e-14,
            lambda_max: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_order(&self, order: usize) -> Self {
        QuadratureConfig {
            order,
            ..self.clone()
        }
    }

    /// Panels for a window of length `len` carrying frequencies up to
    /// `freq` on top of an envelope of width `w`.
    pub(crate) fn panels(&self, len: f64, freq: f64, w: f64) -> usize {
        let phase = len * (freq + 0.5 * self.sigmas / w);
        (self.panel_density * phase / self.sigmas).ceil().max(1.0) as usize
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let ok = self.sigmas > 0.0
            && self.panel_density > 0.0
            && self.order >= 1
            && self.reference_order >= 1
            && self.lambda_cut >= 0.0
            && self.lambda_max.is_none_or(|m| m > self.lambda_cut);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid quadrature settings {self:?}")))
        }
    }
}

/// `e^{-i⟨l, x⟩}`.
pub fn character(l: &[f64], x: &[f64]) -> Complex64 {
    let phase: f64 = l.iter().zip(x).map(|(a, b)| a * b).sum();
    Complex64::from_polar(1.0, -phase)
}

fn kernel_at(f: &TestFunction, l: &Point, g: &Point, u: &Point, cfg: &QuadratureConfig, order: usize) -> Complex64 {
    if f.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let w = f.min_width();
    let bounds = f.bounds(cfg.sigmas);
    let (xs, ws) = gauss_legendre(order);
    let u_inv = inv(u);
    let q0 = mul(g, &u_inv);
    // Second and third coordinates of g·h·u⁻¹ move with b and c at unit rate.
    let (lo2, hi2) = (bounds[1].0 - q0[1], bounds[1].1 - q0[1]);
    let (lo3, hi3) = bounds[2];
    let freq = l[1].abs().max(l[2].abs());
    let rb = Rule::composite_with(lo2, hi2, cfg.panels(hi2 - lo2, freq, w), &xs, &ws);
    let rc = Rule::composite_with(lo3, hi3, cfg.panels(hi3 - lo3, freq, w), &xs, &ws);
    let phases: Vec<Complex64> = rc.nodes.iter().map(|&c| Complex64::from_polar(1.0, -l[2] * c)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for (&b, &wb) in rb.nodes.iter().zip(&rb.weights) {
        let qb = mul(&mul(g, &[0.0, b, 0.0]), &u_inv);
        let mut inner = Complex64::new(0.0, 0.0);
        for ((&c, &wc), ph) in rc.nodes.iter().zip(&rc.weights).zip(&phases) {
            let v = f.eval(&[qb[0], qb[1], c]);
            if v != 0.0 {
                inner += ph * (wc * v);
            }
        }
        // c runs over c̃ - qb3, so χ picks up e^{i l3 qb3}; b contributes e^{-i l2 b}.
        total += inner * Complex64::from_polar(wb, l[2] * qb[2] - l[1] * b);
    }
    total
}

/// One kernel value with the difference to the reference order as error estimate.
pub fn kernel_value(
    f: &TestFunction,
    l: &Point,
    g: &Point,
    u: &Point,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64)> {
    cfg.validate()?;
    if l[2] == 0.0 {
        return Err(Error::NotGenericLayer);
    }
    let v = kernel_at(f, l, g, u, cfg, cfg.order);
    let r = kernel_at(f, l, g, u, cfg, cfg.reference_order);
    Ok((v, (v - r).norm()))
}

/// Kernel matrix `F(l, exp(x_a Z1), exp(x_b Z1))` over coset representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSample {
    pub l: Point,
    pub grid: Vec<f64>,
    /// `values[a][b] = F(l, g_a, u_b)`.
    pub values: Vec<Vec<Complex64>>,
    pub error_estimate: f64,
}

impl KernelSample {
    /// Largest `|F(a,b) - conj F(b,a)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                worst = worst.max((self.values[a][b] - self.values[b][a].conj()).norm());
            }
        }
        worst
    }
}

pub fn kernel_of(
    alg: &NilpotentLieAlgebra,
    f: &TestFunction,
    l: &Point,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<KernelSample> {
    require_h3(alg)?;
    cfg.validate()?;
    if l[2] == 0.0 {
        return Err(Error::NotGenericLayer);
    }
    let rows: Vec<Vec<(Complex64, f64)>> = grid
        .par_iter()
        .map(|&x| {
            grid.iter()
                .map(|&y| kernel_value(f, l, &[x, 0.0, 0.0], &[y, 0.0, 0.0], cfg))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let error_estimate = rows.iter().flatten().map(|v| v.1).fold(0.0, f64::max);
    Ok(KernelSample {
        l: *l,
        grid: grid.to_vec(),
        values: rows.into_iter().map(|r| r.into_iter().map(|v| v.0).collect()).collect(),
        error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::f64::consts::PI;

    #[test]
    fn character_examples() {
        assert_eq!(character(&[1.0, 2.0, 3.0], &[0.0, 0.0, 0.0]), Complex64::new(1.0, 0.0));
        let half = character(&[0.0, 0.0, 1.0], &[0.0, 0.0, PI]);
        assert!((half - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        for t in [0.3, 7.0, -123.4] {
            assert!((character(&[1.0, -2.0, 0.5], &[t, 1.0, t * t]).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gaussian_kernel_closed_form() {
        // F(x, y) = 2π exp(-(x-y)²/2) exp(-(l3 (x+y)/2 - l2)²/2 - l3²/2) for the standard Gaussian.
        let f = TestFunction::gaussian([0.0; 3], 1.0).unwrap();
        let l = [0.0, 0.4, 1.3];
        let cfg = QuadratureConfig::default();
        for (x, y) in [(0.0, 0.0), (0.5, -0.25), (1.0, 2.0)] {
            let (v, err) = kernel_value(&f, &l, &[x, 0.0, 0.0], &[y, 0.0, 0.0], &cfg).unwrap();
            let s: f64 = l[2] * (x + y) / 2.0 - l[1];
            let exact = 2.0 * PI * (-(x - y) * (x - y) / 2.0 - s * s / 2.0 - l[2] * l[2] / 2.0).exp();
            assert!((v - Complex64::new(exact, 0.0)).norm() < 1e-12, "{x} {y}: {v} vs {exact}");
            assert!(err < 1e-10);
        }
    }

    #[test]
    fn kernel_errors() {
        let f = TestFunction::gaussian([0.0; 3], 1.0).unwrap();
        let cfg = QuadratureConfig::default();
        assert_eq!(
            kernel_of(&catalog::h3(), &f, &[0.0, 0.0, 0.0], &[0.0], &cfg),
            Err(Error::NotGenericLayer)
        );
        assert_eq!(
            kernel_of(&catalog::f4(), &f, &[0.0, 0.0, 1.0], &[0.0], &cfg),
            Err(Error::NotHeisenberg)
        );
        let zero = kernel_of(&catalog::h3(), &TestFunction::zero(), &[0.0, 0.0, 1.0], &[0.0, 1.0], &cfg).unwrap();
        assert!(zero.values.iter().flatten().all(|v| v.norm() == 0.0));
    }
}
