//! Brute-force calibration of the inversion constant on the standard
//! Gaussian at the identity.
//!
//! Plain tensor trapezoid over `(λ, v, b, c)` with `v = λx`, every group
//! product taken through the generic `bch` over `f64`; nothing here touches
//! the inversion module's quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use nilorbit::catalog;
use nilorbit::harmonic::{calibrate_kappa, QuadratureConfig, KAPPA};
use nilorbit::{LieAlgebra, Vector};

fn trapezoid_nodes(half: f64, h: f64) -> Vec<f64> {
    let n = (half / h).round() as i64;
    (-n..=n).map(|k| k as f64 * h).collect()
}

#[test]
fn trapezoid_kappa() {
    let alg: LieAlgebra<f64> = catalog::h3().cast();
    let f = |p: &[f64]| (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 2.0).exp();
    let h = 0.3;
    let nodes = trapezoid_nodes(7.0, h);
    // λ = 0 itself is never sampled: the λ nodes sit halfway between.
    let lambdas: Vec<f64> = nodes.iter().map(|l| l + h / 2.0).collect();
    let integral: Complex64 = lambdas
        .par_iter()
        .map(|&lam| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &v in &nodes {
                let x = v / lam;
                let xv = Vector(vec![x, 0.0, 0.0]);
                let xinv = Vector(vec![-x, 0.0, 0.0]);
                for &b in &nodes {
                    // c is centred where the conjugated point crosses c = 0.
                    let shift = -x * b;
                    for &c0 in &nodes {
                        let c = c0 + shift;
                        let p = Vector(vec![0.0, b, c]);
                        let q = alg.bch(&alg.bch(&xv, &p).unwrap(), &xinv).unwrap();
                        let w = f(&q.0);
                        if w > 1e-300 {
                            acc += Complex64::from_polar(w, -lam * c);
                        }
                    }
                }
            }
            // dx = dv/|λ| cancels the Pfaffian weight |λ|.
            acc
        })
        .sum::<Complex64>()
        * h.powi(4);
    let kappa = 1.0 / integral.re;
    assert!(integral.im.abs() < 1e-9 * integral.re);
    assert!((kappa - 1.0 / (4.0 * PI * PI)).abs() < 1e-12, "trapezoid kappa {kappa}");
    assert!((KAPPA - kappa).abs() < 1e-12);
    assert!((calibrate_kappa(&QuadratureConfig::default()) - kappa).abs() < 1e-12);
}
