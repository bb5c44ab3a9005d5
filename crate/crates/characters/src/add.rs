use lg_padic::{EtaleAlgebra, EtaleElt, EtaleKind, PAdic, PAdicField};
use num_complex::Complex64;

use crate::error::{CharError, Result};
use crate::mult::root_of_unity;

/// ψ₀(x) = e(frac(x)), the standard character of Q_p, trivial exactly on Z_p.
pub fn psi0(x: &PAdic) -> Result<Complex64> {
    x.certify(0)?;
    let (num, e) = x.frac()?;
    if e == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(root_of_unity(num as i64, x.p().pow(e)))
}

/// The additive character x ↦ ψ₀(c·x) of F.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AddChar {
    field: PAdicField,
    c: PAdic,
}

impl AddChar {
    pub fn standard(field: PAdicField) -> Self {
        Self { field, c: field.one() }
    }

    /// The character trivial on p^n O and not on p^{n-1} O.
    pub fn with_conductor(field: PAdicField, n: i32) -> Self {
        Self { field, c: field.pow_p(-n) }
    }

    pub fn from_scale(field: PAdicField, c: PAdic) -> Result<Self> {
        if c.is_zero() {
            return Err(CharError::ZeroArgument);
        }
        Ok(Self { field, c })
    }

    pub fn field(&self) -> PAdicField {
        self.field
    }

    /// The c with ψ(x) = ψ₀(cx).
    pub fn scale(&self) -> PAdic {
        self.c
    }

    /// n with ψ trivial exactly on p^n O.
    pub fn conductor(&self) -> i32 {
        -self.c.val()
    }

    /// ψ_b(x) = ψ(bx).
    pub fn twist(&self, b: &PAdic) -> Result<Self> {
        Self::from_scale(self.field, self.c.mul(b))
    }

    pub fn inverse(&self) -> Self {
        Self { field: self.field, c: self.c.neg() }
    }

    /// ψ₂(x) = ψ(2x).
    pub fn psi2(&self) -> Self {
        Self { field: self.field, c: self.c.mul(&self.field.from_i64(2)) }
    }

    pub fn eval(&self, x: &PAdic) -> Result<Complex64> {
        psi0(&self.c.mul(x))
    }

    /// vol(O) for the Haar measure self-dual with respect to ψ.
    pub fn self_dual_volume(&self) -> f64 {
        (self.field.q() as f64).powf(self.conductor() as f64 / 2.0)
    }
}

/// The additive character z ↦ ψ₀(Tr(a·z)) of E.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AddCharE {
    alg: EtaleAlgebra,
    a: EtaleElt,
}

impl AddCharE {
    /// ψ_E = ψ∘Tr.
    pub fn from_f(alg: EtaleAlgebra, psi: &AddChar) -> Self {
        Self { alg, a: alg.from_f(psi.scale()) }
    }

    /// z ↦ ψ_E(δz) (fields only).
    pub fn delta_twist(alg: EtaleAlgebra, psi: &AddChar) -> Result<Self> {
        if !alg.is_field() {
            return Err(CharError::NotAField);
        }
        Ok(Self::from_f(alg, psi).twist(&alg.delta()))
    }

    pub fn algebra(&self) -> EtaleAlgebra {
        self.alg
    }

    pub fn scale(&self) -> EtaleElt {
        self.a
    }

    pub fn twist(&self, b: &EtaleElt) -> Self {
        Self { alg: self.alg, a: self.alg.mul(&self.a, b) }
    }

    pub fn inverse(&self) -> Self {
        Self { alg: self.alg, a: self.alg.neg(&self.a) }
    }

    pub fn eval(&self, z: &EtaleElt) -> Result<Complex64> {
        psi0(&self.alg.trace(&self.alg.mul(&self.a, z)))
    }

    /// n_E with the character trivial exactly on p_E^{n_E}. The inverse
    /// different of E/F is p_E^{-(e-1)} for p odd, so n_E = (1 − e) − v_E(a).
    pub fn conductor(&self) -> Result<i32> {
        if self.alg.kind() == EtaleKind::Split {
            return Err(CharError::NotAField);
        }
        Ok(1 - self.alg.e() as i32 - self.alg.v_e(&self.a)?)
    }

    /// Pairing z·y = Σ κ_i z_i y_i in the coordinates a + bδ: (2c, 2cΔ) for a = c.
    /// Returns (κ₀, κ₁, κ_cross) where Tr(a z y) is expressed on coordinates.
    pub fn coordinate_form(&self) -> (PAdic, PAdic, PAdic) {
        // Tr(a z y) for a = a0 + a1δ, z = z0 + z1δ, y = y0 + y1δ:
        // 2 [a0 (z0 y0 + Δ z1 y1) + a1 Δ (z0 y1 + z1 y0)]
        let two = self.alg.field().from_i64(2);
        let d = self.alg.delta_sq();
        (two.mul(&self.a.a), two.mul(&self.a.a).mul(&d), two.mul(&self.a.b).mul(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_character_values() {
        let f = PAdicField::new(3, 12).unwrap();
        let psi = AddChar::standard(f);
        assert!((psi.eval(&f.from_i64(7)).unwrap() - 1.0).norm() < 1e-15);
        let x = f.from_ratio(1, 3).unwrap();
        let w = psi.eval(&x).unwrap();
        assert!((w - root_of_unity(1, 3)).norm() < 1e-15);
        assert_eq!(psi.conductor(), 0);
        assert_eq!(AddChar::with_conductor(f, 2).conductor(), 2);
    }

    #[test]
    fn delta_is_traceless() {
        let f = PAdicField::new(5, 12).unwrap();
        for e in [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
            let psi_e = AddCharE::from_f(e, &AddChar::with_conductor(f, 3));
            assert!((psi_e.eval(&e.delta()).unwrap() - 1.0).norm() < 1e-15);
        }
    }
}
