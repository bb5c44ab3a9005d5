//! Godement sections on U₂, their intertwining operator and the minimal-case
//! Rankin–Selberg gamma factor of U₁ × Res_{E/F}GL₁.

pub mod error;
pub mod ft;
pub mod intertwine;
pub mod matrix;
pub mod minimal;
pub mod section;
pub mod shells;

pub use error::{GodementError, Result};
pub use ft::{verify_ft_field, verify_ft_split, FtReport};
pub use intertwine::{
    intertwine_at_identity, intertwine_closed_form, intertwine_normalized, normalization_certificate, whittaker_integral,
    Certificate,
};
pub use matrix::{MatE, MatF, U2Element};
pub use minimal::{
    compare_with_wd, expected_gamma_delta, gamma_delta, gamma_delta_over_functions, gamma_rs_from_delta, period_direct,
    period_tate, test_functions, GammaDelta, RsComparison,
};
pub use section::{symplectic_fourier, GodementSection};
