//! The Heisenberg group `H3` in exponential coordinates.

use crate::catalog;
use crate::error::{Error, Result};
use crate::NilpotentLieAlgebra;

/// `exp(x1 Z1 + x2 Z2 + x3 Z3)` with `[Z1, Z2] = Z3`.
pub type Point = [f64; 3];

pub const IDENTITY: Point = [0.0, 0.0, 0.0];

/// `log(exp x · exp y)`; the series stops after the first bracket.
pub fn mul(x: &Point, y: &Point) -> Point {
    [
        x[0] + y[0],
        x[1] + y[1],
        x[2] + y[2] + 0.5 * (x[0] * y[1] - x[1] * y[0]),
    ]
}

pub fn inv(x: &Point) -> Point {
    [-x[0], -x[1], -x[2]]
}

/// Errors unless `alg` is `h3` with exactly `[Z1, Z2] = Z3`.
pub fn require_h3(alg: &NilpotentLieAlgebra) -> Result<()> {
    let h3 = catalog::h3();
    let same = alg.dim() == 3 && alg.constants().eq(h3.constants());
    if same {
        Ok(())
    } else {
        Err(Error::NotHeisenberg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Vector;

    #[test]
    fn matches_generic_bch() {
        let h3 = catalog::h3().cast::<f64>();
        let pts = [[0.3, -1.2, 2.0], [1.5, 0.25, -0.7], [-2.0, 3.0, 0.1]];
        for x in &pts {
            for y in &pts {
                let generic = h3.bch(&Vector(x.to_vec()), &Vector(y.to_vec())).unwrap();
                let fast = mul(x, y);
                for i in 0..3 {
                    assert!((generic[i] - fast[i]).abs() < 1e-14);
                }
            }
        }
        assert_eq!(mul(&pts[0], &inv(&pts[0])), IDENTITY);
    }

    #[test]
    fn only_h3_accepted() {
        assert!(require_h3(&catalog::h3()).is_ok());
        assert_eq!(require_h3(&catalog::h5()), Err(Error::NotHeisenberg));
        assert_eq!(require_h3(&catalog::abelian(3)), Err(Error::NotHeisenberg));
    }
}
