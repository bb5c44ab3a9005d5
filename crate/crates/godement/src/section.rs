use lg_chars::{AddChar, EtaleChar, MultChar};
use lg_padic::{EtaleAlgebra, EtaleElt, PAdic};
use lg_symbolic::LaurentRational;
use lg_tate::{tate_integral, Domain, SchwartzFn};
use num_complex::Complex64;

use crate::error::{GodementError, Result};
use crate::matrix::{decompose, det_f, sl2_part, MatE, MatF, U2Element};

/// The symplectic transform φ̂(x, y) = ∫∫ φ(z, w) ψ₂(zy − wx) dz dw, with dz
/// and dw self-dual for ψ₂.
pub fn symplectic_fourier(phi: &SchwartzFn, psi: &AddChar) -> Result<SchwartzFn> {
    let two_c = psi.psi2().scale();
    Ok(phi.fourier_diag(&[two_c.neg(), two_c], &[1, 0])?)
}

/// The Godement section f_s^φ(·; τ) on U₂(F), possibly scaled and evaluated
/// at 1 − s instead of s.
///
/// Values are rational functions of X = q^{-s}; d^×t = dt/|t| with vol(O) = 1.
#[derive(Clone, Debug)]
pub struct GodementSection {
    alg: EtaleAlgebra,
    phi: SchwartzFn,
    tau: EtaleChar,
    scalar: Complex64,
    reflected: bool,
}

impl GodementSection {
    pub fn new(alg: EtaleAlgebra, phi: SchwartzFn, tau: EtaleChar) -> Result<Self> {
        if phi.dim() != 2 {
            return Err(GodementError::Shape("Godement sections need φ on F²".into()));
        }
        match (&tau, alg.is_field()) {
            (EtaleChar::Field(_), true) | (EtaleChar::Split(..), false) => {}
            _ => return Err(GodementError::Shape("τ does not match the algebra".into())),
        }
        Ok(Self { alg, phi, tau, scalar: Complex64::new(1.0, 0.0), reflected: false })
    }

    pub fn alg(&self) -> &EtaleAlgebra {
        &self.alg
    }

    pub fn phi(&self) -> &SchwartzFn {
        &self.phi
    }

    pub fn tau(&self) -> &EtaleChar {
        &self.tau
    }

    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    /// Whether the section is f_{1−s} rather than f_s.
    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    pub fn q(&self) -> u64 {
        self.alg.field().q()
    }

    /// c·f, with the same φ, τ and s.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self { scalar: self.scalar * c, ..self.clone() }
    }

    /// The same data with s replaced by 1 − s.
    pub fn reflected(&self) -> Self {
        Self { reflected: !self.reflected, ..self.clone() }
    }

    /// Applies the scalar and the s ↦ 1 − s flag to a value computed at s.
    pub fn finish(&self, v: LaurentRational) -> Result<LaurentRational> {
        let v = if self.reflected { v.reflect()? } else { v };
        Ok(v.scale(self.scalar))
    }

    /// χ₀ = τ|_{F^×}.
    pub fn chi0(&self) -> Result<MultChar> {
        Ok(self.tau.restrict_to_f()?)
    }

    /// ∫ φ(t·row) χ₀(t) |t|^{2s} d^×t.
    pub fn row_integral(&self, row: &[PAdic; 2]) -> Result<LaurentRational> {
        let f = self.alg.field();
        let line = self.phi.restrict_line(row)?;
        let z = tate_integral(&Domain::F(f), &line, &self.chi0()?, 1.0)?;
        Ok(z.pow_subst(2)?)
    }

    /// f_s(h) at s, before scalar and reflection, for h = diag(a, θ(a)^{-1})·conj(h₁).
    pub fn core_decomposed(&self, a: &EtaleElt, h1: &MatF) -> Result<LaurentRational> {
        let EtaleChar::Field(chi) = &self.tau else {
            return Err(GodementError::Shape("decomposed evaluation is for a field E".into()));
        };
        let lead = chi.eval_e(a)?;
        let m = self.alg.f() as i32 * self.alg.v_e(a)?;
        Ok(self.row_integral(&h1[1])?.mul_monomial(lead, m))
    }

    /// f_s(h) at s, before scalar and reflection.
    pub fn core(&self, h: &U2Element) -> Result<LaurentRational> {
        match (h, &self.tau) {
            (U2Element::Field(m), EtaleChar::Field(_)) => {
                let (a, h1) = decompose(&self.alg, m)?;
                self.core_decomposed(&a, &h1)
            }
            (U2Element::Split(m), EtaleChar::Split(chi1, _)) => {
                let d = det_f(m);
                let lead = chi1.eval_f(&d)?;
                let v = d.valuation().ok_or_else(|| GodementError::Shape("singular matrix".into()))?;
                Ok(self.row_integral(&m[1])?.mul_monomial(lead, v))
            }
            _ => Err(GodementError::Shape("group element does not match the section".into())),
        }
    }

    /// f(h).
    pub fn eval(&self, h: &U2Element) -> Result<LaurentRational> {
        self.finish(self.core(h)?)
    }

    /// f(h) computed from a caller-supplied torus part a (field case).
    pub fn eval_with_torus(&self, a: &EtaleElt, h: &MatE) -> Result<LaurentRational> {
        let h1 = sl2_part(&self.alg, a, h)?;
        self.finish(self.core_decomposed(a, &h1)?)
    }

    /// The section χ₀(−1)·f_{1−s}^{φ̂}(·; τ*) that the normalized
    /// intertwining operator is claimed to produce.
    pub fn dual(&self, psi: &AddChar) -> Result<Self> {
        let f = self.alg.field();
        let sign = self.chi0()?.eval_f(&f.from_i64(-1))?;
        Ok(Self {
            alg: self.alg,
            phi: symplectic_fourier(&self.phi, psi)?,
            tau: self.tau.conjugate_dual()?,
            scalar: self.scalar * sign,
            reflected: !self.reflected,
        })
    }
}
