//! Quasitensor functors between C*-tensor categories and the algebras and
//! bimodules they induce, with exact and floating-point back ends.

pub mod category;
pub mod error;
pub mod ergodic;
pub mod builtin;
pub mod functor;
pub mod group;
pub mod hilb;
pub mod induction;
pub mod linalg;
pub mod matrix;
pub mod quasitensor;
pub mod rep;
pub mod repcat;
pub mod report;
pub mod scalar;
pub mod su2;
pub mod suites;
pub mod config;
pub mod surd;
pub mod tl;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{eps, set_eps, Scalar};
pub use surd::Surd;

/// Exact scalars: Gaussian rationals extended by square roots of integers.
pub type Exact = Surd;
/// Double-precision complex scalars.
pub type F64 = num_complex::Complex<f64>;
/// Single-precision complex scalars.
pub type F32 = num_complex::Complex<f32>;
