//! Schwartz–Bruhat functions, Fourier transforms and Tate integrals over
//! Q_p and its quadratic extensions, with the resulting gamma factors.

pub mod error;
pub mod lambda;
pub mod schwartz;
pub mod tate;

pub use error::{Result, TateError};
pub use lambda::{gamma_wd_pair, lambda_ef, lambda_ratio};
pub use schwartz::{SchwartzFn, Term};
pub use tate::{canonical_test_function, fourier, gamma_wd, gamma_with, shell_value, tate_integral, Domain};
