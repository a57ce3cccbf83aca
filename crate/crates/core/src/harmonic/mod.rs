//! Pfaffians on the generic layer and Fourier inversion on `H3`.

pub mod function;
pub mod heisenberg;
pub mod inversion;
pub mod kernel;
pub mod pfaffian;
pub mod quadrature;

pub use function::{GaussianPolynomial, TestFunction};
pub use inversion::{calibrate_kappa, inversion, InversionReport, InversionSample, KAPPA};
pub use kernel::{character, kernel_of, kernel_value, KernelSample, QuadratureConfig};
pub use pfaffian::{pfaffian, pfaffian_of, SkewForm};
