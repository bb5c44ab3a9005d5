use lg_chars::{omega_char, AddChar, Base, EtaleChar, MultChar, PiChar};
use lg_padic::EtaleAlgebra;
use lg_symbolic::{LaurentRational, DEFAULT_TOL};
use num_complex::Complex64;

use crate::error::{Result, TateError};
use crate::tate::gamma_wd;

/// The ratio γ(s, 1, ψ)·γ(s, ω_{E/F}, ψ) / γ_E(s, 1, ψ_E) before it is
/// certified constant.
pub fn lambda_ratio(alg: &EtaleAlgebra, psi: &AddChar) -> Result<LaurentRational> {
    if !alg.is_field() {
        return Err(TateError::Char(lg_chars::CharError::NotAField));
    }
    let f = alg.field();
    let one_f = MultChar::trivial(Base::F(f))?;
    let one_e = MultChar::trivial(Base::E(*alg))?;
    let num = gamma_wd(&one_f, psi)?.mul(&gamma_wd(&omega_char(alg)?, psi)?)?;
    Ok(num.div(&gamma_wd(&one_e, psi)?)?)
}

/// Langlands' λ_{E/F}(ψ), from inductivity applied to the trivial character.
pub fn lambda_ef(alg: &EtaleAlgebra, psi: &AddChar) -> Result<Complex64> {
    let r = lambda_ratio(alg, psi)?;
    r.as_constant(DEFAULT_TOL).ok_or_else(|| TateError::NotConstant(format!("λ ratio depends on X: {r}")))
}

/// γ^WD(s, π×τ, ψ) at GL(1): λ_{E/F}(ψ)·γ_E(s, ηχ, ψ_E) for a field, and
/// γ(s, ηχ₁, ψ)·γ(s, η^{-1}χ₂, ψ) for split E.
pub fn gamma_wd_pair(pi: &PiChar, tau: &EtaleChar, psi: &AddChar, alg: &EtaleAlgebra) -> Result<LaurentRational> {
    match (pi, tau) {
        (PiChar::Field(eta1), EtaleChar::Field(chi)) => {
            let g = gamma_wd(&eta1.pullback().mul(chi)?, psi)?;
            Ok(g.scale(lambda_ef(alg, psi)?))
        }
        (PiChar::Split(eta), EtaleChar::Split(c1, c2)) => {
            Ok(gamma_wd(&eta.mul(c1)?, psi)?.mul(&gamma_wd(&eta.inv().mul(c2)?, psi)?)?)
        }
        _ => Err(TateError::Shape("π and τ belong to different cases".into())),
    }
}
