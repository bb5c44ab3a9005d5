//! Rational functions of X = q^{-s} with complex coefficients, the value type
//! of every local integral and gamma factor in this workspace.

mod poly;
mod rational;

pub use num_complex::Complex64;
pub use poly::LaurentPoly;
pub use rational::{lr_deviation, lr_equal, LaurentJson, LaurentRational, SymbolicError, DEFAULT_TOL, DEGREE_CAP};
