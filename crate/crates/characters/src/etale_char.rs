use lg_padic::{EtaleAlgebra, EtaleElt, PAdic, PAdicField};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{CharError, Result};
use crate::mult::MultChar;
use crate::units::Base;

/// A character of E^×: a single character when E is a field, an ordered
/// pair (χ₁, χ₂) acting on (x, y) ∈ F^× × F^× when E is split.
#[derive(Clone, Debug)]
pub enum EtaleChar {
    Field(MultChar),
    Split(MultChar, MultChar),
}

impl EtaleChar {
    pub fn field(chi: MultChar) -> Result<Self> {
        match chi.base() {
            Base::E(_) => Ok(EtaleChar::Field(chi)),
            Base::F(_) => Err(CharError::BaseMismatch("field-case character must live on E^×".into())),
        }
    }

    pub fn split(chi1: MultChar, chi2: MultChar) -> Result<Self> {
        match (chi1.base(), chi2.base()) {
            (Base::F(a), Base::F(b)) if a == b => Ok(EtaleChar::Split(chi1, chi2)),
            _ => Err(CharError::BaseMismatch("split-case pair must live on F^×".into())),
        }
    }

    pub fn trivial(alg: EtaleAlgebra) -> Result<Self> {
        if alg.is_field() {
            Ok(EtaleChar::Field(MultChar::trivial(Base::E(alg))?))
        } else {
            let t = MultChar::trivial(Base::F(alg.field()))?;
            Ok(EtaleChar::Split(t.clone(), t))
        }
    }

    pub fn random<R: Rng + ?Sized>(alg: EtaleAlgebra, level: u32, unif_order: u64, rng: &mut R) -> Result<Self> {
        if alg.is_field() {
            Ok(EtaleChar::Field(MultChar::random(Base::E(alg), level, unif_order, rng)?))
        } else {
            let f = Base::F(alg.field());
            Ok(EtaleChar::Split(MultChar::random(f, level, unif_order, rng)?, MultChar::random(f, level, unif_order, rng)?))
        }
    }

    pub fn eval(&self, alg: &EtaleAlgebra, z: &EtaleElt) -> Result<Complex64> {
        match self {
            EtaleChar::Field(chi) => chi.eval_e(z),
            EtaleChar::Split(c1, c2) => {
                let (x, y) = alg.to_pair(z);
                Ok(c1.eval_f(&x)? * c2.eval_f(&y)?)
            }
        }
    }

    /// χ₀ = χ|_{F^×}; χ₁χ₂ in the split case.
    pub fn restrict_to_f(&self) -> Result<MultChar> {
        match self {
            EtaleChar::Field(chi) => chi.restrict_to_f(),
            EtaleChar::Split(c1, c2) => c1.mul(c2),
        }
    }

    /// χ*(a) = χ(θ(a))^{-1}; (χ₁, χ₂)* = (χ₂^{-1}, χ₁^{-1}).
    pub fn conjugate_dual(&self) -> Result<Self> {
        match self {
            EtaleChar::Field(chi) => Ok(EtaleChar::Field(chi.conjugate_dual()?)),
            EtaleChar::Split(c1, c2) => Ok(EtaleChar::Split(c2.inv(), c1.inv())),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (EtaleChar::Field(a), EtaleChar::Field(b)) => Ok(EtaleChar::Field(a.mul(b)?)),
            (EtaleChar::Split(a1, a2), EtaleChar::Split(b1, b2)) => Ok(EtaleChar::Split(a1.mul(b1)?, a2.mul(b2)?)),
            _ => Err(CharError::BaseMismatch("field and split characters".into())),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            EtaleChar::Field(a) => EtaleChar::Field(a.inv()),
            EtaleChar::Split(a, b) => EtaleChar::Split(a.inv(), b.inv()),
        }
    }

    /// ω_τ(δ): χ(δ) for a field, χ₁(1)χ₂(−1) for δ = (1, −1).
    pub fn at_delta(&self, alg: &EtaleAlgebra) -> Result<Complex64> {
        self.eval(alg, &alg.delta())
    }

    pub fn depth(&self) -> u32 {
        match self {
            EtaleChar::Field(chi) => chi.depth(),
            EtaleChar::Split(a, b) => a.depth().max(b.depth()),
        }
    }
}

/// A character η₁ of E¹, stored through its pullback η(a) = η₁(a/θ(a)).
#[derive(Clone, Debug)]
pub struct U1Char {
    eta: MultChar,
}

impl U1Char {
    /// Checks that η is trivial on F^× (on generators and on p).
    pub fn from_pullback(eta: MultChar) -> Result<Self> {
        let Base::E(_) = eta.base() else {
            return Err(CharError::NotAField);
        };
        let r = eta.restrict_to_f()?;
        if r.depth() != 0 || (r.unif_value() - 1.0).norm() > 1e-12 {
            return Err(CharError::NotTrivialOnF(format!(
                "restriction has depth {} and value {} at p",
                r.depth(),
                r.unif_value()
            )));
        }
        Ok(Self { eta })
    }

    /// η = ν·(ν∘θ)^{-1}, the pullback of ν|_{E¹}.
    pub fn from_character(nu: &MultChar) -> Result<Self> {
        Self::from_pullback(nu.mul(&nu.conj_theta()?.inv())?)
    }

    pub fn trivial(alg: EtaleAlgebra) -> Result<Self> {
        Self::from_pullback(MultChar::trivial(Base::E(alg))?)
    }

    pub fn random<R: Rng + ?Sized>(alg: EtaleAlgebra, level: u32, rng: &mut R) -> Result<Self> {
        Self::from_character(&MultChar::random(Base::E(alg), level, 4, rng)?)
    }

    pub fn pullback(&self) -> &MultChar {
        &self.eta
    }

    /// η₁(α) for α ∈ E¹, through Hilbert 90.
    pub fn eval(&self, alpha: &EtaleElt) -> Result<Complex64> {
        let Base::E(alg) = self.eta.base() else { unreachable!() };
        let a = alg.hilbert90(alpha)?;
        self.eta.eval_e(&a)
    }

    /// η₁(−1) = η(δ).
    pub fn at_minus_one(&self) -> Result<Complex64> {
        let Base::E(alg) = self.eta.base() else { unreachable!() };
        self.eta.eval_e(&alg.delta())
    }
}

/// ω_{E/F}(x) = +1 iff x is a norm from E.
pub fn omega_ef(alg: &EtaleAlgebra, x: &PAdic) -> Result<i32> {
    if x.is_zero() {
        return Err(CharError::ZeroArgument);
    }
    Ok(if alg.is_norm(x)? { 1 } else { -1 })
}

/// ω_{E/F} as a character of F^× (depth ≤ 1).
pub fn omega_char(alg: &EtaleAlgebra) -> Result<MultChar> {
    let f: PAdicField = alg.field();
    let unif = Complex64::new(omega_ef(alg, &f.uniformizer())? as f64, 0.0);
    MultChar::from_phase_fn(Base::F(f), 1, unif, |key| {
        let s = omega_ef(alg, &f.from_residue(key))?;
        Ok(if s == 1 { (0, 1) } else { (1, 2) })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn split_restriction_is_product() {
        let f = PAdicField::new(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = EtaleAlgebra::split(f);
        let tau = EtaleChar::random(alg, 2, 4, &mut rng).unwrap();
        let chi0 = tau.restrict_to_f().unwrap();
        for _ in 0..50 {
            let x = f.random(&mut rng, -2, 2);
            let lhs = tau.eval(&alg, &alg.from_f(x)).unwrap();
            assert!((lhs - chi0.eval_f(&x).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn omega_is_quadratic() {
        for p in [3, 5, 7] {
            let f = PAdicField::new(p, 12).unwrap();
            for alg in [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
                let w = omega_char(&alg).unwrap();
                assert!(w.pow(2).approx_eq(&MultChar::trivial(Base::F(f)).unwrap(), 1e-12));
                assert_eq!(omega_ef(&alg, &f.one()).unwrap(), 1);
            }
            let w = omega_char(&EtaleAlgebra::split(f)).unwrap();
            assert!(w.approx_eq(&MultChar::trivial(Base::F(f)).unwrap(), 1e-12));
        }
    }
}
