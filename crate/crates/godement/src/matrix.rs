//! 2×2 matrices over F and over a quadratic field E, with the elements of
//! U₂ (for the form J₂) and GL₂ used by the minimal case.

use lg_padic::{EtaleAlgebra, EtaleElt, PAdic, PAdicField};

use crate::error::{GodementError, Result};

pub type MatF = [[PAdic; 2]; 2];
pub type MatE = [[EtaleElt; 2]; 2];

/// An element of U₂(F): a matrix over E when E is a field, an element of
/// GL₂(F) when E = F × F.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum U2Element {
    Field(MatE),
    Split(MatF),
}

pub fn mul_f(a: &MatF, b: &MatF) -> MatF {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn det_f(a: &MatF) -> PAdic {
    a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0]))
}

pub fn mul_e(alg: &EtaleAlgebra, a: &MatE, b: &MatE) -> MatE {
    let e = |i: usize, j: usize| alg.add(&alg.mul(&a[i][0], &b[0][j]), &alg.mul(&a[i][1], &b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn det_e(alg: &EtaleAlgebra, a: &MatE) -> EtaleElt {
    alg.sub(&alg.mul(&a[0][0], &a[1][1]), &alg.mul(&a[0][1], &a[1][0]))
}

pub fn lift(alg: &EtaleAlgebra, a: &MatF) -> MatE {
    [[alg.from_f(a[0][0]), alg.from_f(a[0][1])], [alg.from_f(a[1][0]), alg.from_f(a[1][1])]]
}

/// ᵗθ(h)·J₂·h = J₂.
pub fn is_unitary(alg: &EtaleAlgebra, h: &MatE) -> bool {
    let th = [[alg.theta(&h[0][0]), alg.theta(&h[1][0])], [alg.theta(&h[0][1]), alg.theta(&h[1][1])]];
    let j = weyl_e(alg);
    let lhs = mul_e(alg, &mul_e(alg, &th, &j), h);
    (0..2).all(|r| (0..2).all(|c| alg.approx_eq(&lhs[r][c], &j[r][c])))
}

pub fn weyl_f(f: &PAdicField) -> MatF {
    [[f.zero(), f.one()], [f.one(), f.zero()]]
}

pub fn weyl_e(alg: &EtaleAlgebra) -> MatE {
    lift(alg, &weyl_f(&alg.field()))
}

/// [[1, δx], [0, 1]], the unipotent radical of the Borel of U₂.
pub fn unipotent_e(alg: &EtaleAlgebra, x: &PAdic) -> MatE {
    [[alg.one(), alg.scale(x, &alg.delta())], [alg.zero(), alg.one()]]
}

pub fn unipotent_f(f: &PAdicField, x: &PAdic) -> MatF {
    [[f.one(), *x], [f.zero(), f.one()]]
}

/// diag(a, θ(a)^{-1}).
pub fn torus_e(alg: &EtaleAlgebra, a: &EtaleElt) -> Result<MatE> {
    Ok([[*a, alg.zero()], [alg.zero(), alg.inv(&alg.theta(a))?]])
}

/// diag(δ, 1)·h₁·diag(δ, 1)^{-1}, the image of SL₂(F) in SU₂(F).
pub fn conj_sl2(alg: &EtaleAlgebra, h1: &MatF) -> Result<MatE> {
    let d = alg.delta();
    let di = alg.inv(&d)?;
    let l = lift(alg, h1);
    Ok([[l[0][0], alg.mul(&d, &l[0][1])], [alg.mul(&di, &l[1][0]), l[1][1]]])
}

/// j^{0,1}(α) = ½[[1+α, 1−α], [1−α, 1+α]] for α ∈ E¹.
pub fn j01_field(alg: &EtaleAlgebra, alpha: &EtaleElt) -> Result<MatE> {
    let half = alg.field().from_ratio(1, 2)?;
    let p = alg.scale(&half, &alg.add(&alg.one(), alpha));
    let m = alg.scale(&half, &alg.sub(&alg.one(), alpha));
    Ok([[p, m], [m, p]])
}

/// j^{0,1}(a) = ½[[1+a, 1−a], [1−a, 1+a]] for a ∈ F^×.
pub fn j01_split(f: &PAdicField, a: &PAdic) -> Result<MatF> {
    let half = f.from_ratio(1, 2)?;
    let p = half.mul(&f.one().add(a));
    let m = half.mul(&f.one().sub(a));
    Ok([[p, m], [m, p]])
}

/// h₀ = ½[[1, 1], [1, −1]].
pub fn h0(f: &PAdicField) -> Result<MatF> {
    let half = f.from_ratio(1, 2)?;
    Ok([[half, half], [half, half.neg()]])
}

/// Writes h = diag(a, θ(a)^{-1})·diag(δ, 1)·h₁·diag(δ, 1)^{-1} with h₁ ∈
/// SL₂(F), taking a from Hilbert 90 applied to det(h).
pub fn decompose(alg: &EtaleAlgebra, h: &MatE) -> Result<(EtaleElt, MatF)> {
    if !alg.is_field() {
        return Err(GodementError::Shape("the torus decomposition is for a field E".into()));
    }
    if !is_unitary(alg, h) {
        return Err(GodementError::NotUnitary(format!("{h:?}")));
    }
    let a = alg.hilbert90(&det_e(alg, h))?;
    let h1 = sl2_part(alg, &a, h)?;
    Ok((a, h1))
}

/// h₁ = diag(δ,1)^{-1}·diag(a^{-1}, θ(a))·h·diag(δ,1) for a chosen a.
pub fn sl2_part(alg: &EtaleAlgebra, a: &EtaleElt, h: &MatE) -> Result<MatF> {
    let d = alg.delta();
    let di = alg.inv(&d)?;
    let s = [alg.inv(a)?, alg.theta(a)];
    let dl = [di, alg.one()];
    let dr = [d, alg.one()];
    let f = alg.field();
    let mut out = [[f.zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let e = alg.mul(&alg.mul(&dl[i], &s[i]), &alg.mul(&h[i][j], &dr[j]));
            if !alg.approx_eq(&e, &alg.from_f(e.a)) {
                return Err(GodementError::NotDecomposable(format!("entry ({i},{j}) of h₁ is not in F")));
            }
            out[i][j] = e.a;
        }
    }
    if !det_f(&out).sub(&f.one()).is_zero() {
        return Err(GodementError::NotDecomposable("h₁ is not in SL₂(F)".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_unitary_and_decomposes() {
        let f = PAdicField::new(5, 12).unwrap();
        for alg in [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
            for alpha in alg.e1_cosets(2).unwrap() {
                let h = j01_field(&alg, &alpha).unwrap();
                assert!(is_unitary(&alg, &h));
                let (a, h1) = decompose(&alg, &h).unwrap();
                let back = mul_e(&alg, &torus_e(&alg, &a).unwrap(), &conj_sl2(&alg, &h1).unwrap());
                for i in 0..2 {
                    for j in 0..2 {
                        assert!(alg.approx_eq(&back[i][j], &h[i][j]));
                    }
                }
            }
        }
    }
}
