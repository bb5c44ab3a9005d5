//! Jacobians of conjugation on unipotent subgroups.
//!
//! For ū′ = g⁻¹ūg the coordinates of ū′ are a linear function of those of ū.
//! Realifying the algebra coordinates gives a rational matrix T; the measure
//! relation is dū = |det T|⁻¹ dū′. With ν the modulus attached to g, the
//! exponent e in dū = ν^e dū′ is read off from |det T| = ν^{−e}.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;

use crate::error::{GroupError, Result};
use crate::identities::Params;
use crate::matrix::{Mat, QMat};
use crate::scalar::{q, Alg, K};
use crate::structures::{j_lower, j_upper};
use crate::subgroups::{Subgroup, SubgroupKind};

/// |det T| for the map ū ↦ g⁻¹ūg on the GL version of `sub`.
pub fn conjugation_determinant(sub: &Subgroup, g: &Mat) -> Result<BigRational> {
    let pat = sub.pattern();
    let alg = g.alg();
    let gi = g.inverse()?;
    let m = pat.positions().len();
    let mut t = QMat::zeros(2 * m, 2 * m);
    let basis = [K::new(q(1), q(0)), K::new(q(0), q(1))];
    for i in 0..m {
        for (bi, e) in basis.iter().enumerate() {
            let mut c = vec![alg.zero(); m];
            c[i] = e.clone();
            let u = pat.from_coords(alg, &c);
            let moved = gi.mul(&u).mul(g);
            if !pat.contains(&moved) {
                return Err(GroupError::NotStabilizing(format!("conjugation moves coordinate {i} out of the pattern")));
            }
            for (j, v) in pat.coords(&moved).iter().enumerate() {
                t.set(2 * j, 2 * i + bi, v.x.clone());
                t.set(2 * j + 1, 2 * i + bi, v.y.clone());
            }
        }
    }
    let d = t.det().abs();
    if d.is_zero() {
        return Err(GroupError::Singular("conjugation is not bijective on the pattern".into()));
    }
    Ok(d)
}

/// The exponent e with dū = ν^e dū′ for ū′ = g⁻¹ūg.
pub fn jacobian_exponent(sub: &Subgroup, g: &Mat, nu: &BigRational) -> Result<i64> {
    let d = conjugation_determinant(sub, g)?;
    let nu = nu.abs();
    if nu.is_one() || nu.is_zero() {
        return if d.is_one() {
            Ok(0)
        } else {
            Err(GroupError::NotStabilizing(format!("|det| = {d} is not a power of the trivial modulus")))
        };
    }
    for e in 0..=64i32 {
        let p = num_traits::pow::pow(nu.clone(), e as usize);
        if p == d {
            return Ok(-(e as i64));
        }
        if p.recip() == d {
            return Ok(e as i64);
        }
    }
    Err(GroupError::NotStabilizing(format!("|det| = {d} is not a power of ν = {nu}")))
}

/// One configured Jacobian: the subgroup, the conjugating element and ν.
pub struct JacobianCase {
    pub sub: Subgroup,
    pub g: Mat,
    pub nu: BigRational,
}

pub type JacobianBuilder = fn(&Params, Alg, &mut ChaCha8Rng) -> Result<JacobianCase>;

fn norm_ratio(alg: Alg, a: &Mat, b: &Mat) -> BigRational {
    alg.abs_norm(&a.det()) / alg.abs_norm(&b.det())
}

/// Draws a, b ∈ GL_k until ν(ab⁻¹) ≠ 1, so the exponent is determined.
fn levi_pair(alg: Alg, k: usize, rng: &mut ChaCha8Rng) -> (Mat, Mat, BigRational) {
    loop {
        let a = Mat::random_invertible(alg, k, rng);
        let b = Mat::random_invertible(alg, k, rng);
        let nu = norm_ratio(alg, &a, &b);
        if !nu.is_one() {
            return (a, b, nu);
        }
    }
}

fn xbar_for(p: &Params) -> Result<Subgroup> {
    if p.n < p.r {
        Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)
    } else {
        Subgroup::new(SubgroupKind::XbarLower, p.n, p.r)
    }
}

pub fn identity(p: &Params, alg: Alg, _rng: &mut ChaCha8Rng) -> Result<JacobianCase> {
    let sub = xbar_for(p)?;
    let dim = sub.pattern().dim();
    Ok(JacobianCase { sub, g: Mat::identity(alg, dim), nu: q(2) })
}

fn k_of(p: &Params) -> Result<usize> {
    p.k.filter(|&k| k >= 1 && k <= p.n).ok_or_else(|| GroupError::BadSize("needs 1 ≤ k ≤ n".into()))
}

pub fn pbar(p: &Params, alg: Alg, rng: &mut ChaCha8Rng) -> Result<JacobianCase> {
    let k = k_of(p)?;
    let n0 = p.n - k;
    let (a, b, nu) = levi_pair(alg, k, rng);
    let x = Mat::random(alg, n0, k, rng);
    let y = Mat::random(alg, k, n0, rng);
    let pb = Mat::unipotent(alg, &[k, n0, 1, n0, k], &[(0, 0, &a), (1, 0, &x), (4, 3, &y), (4, 4, &b)]);
    Ok(JacobianCase { sub: Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?, g: j_upper(p.n, p.r, &pb)?, nu })
}

pub fn c_levi(p: &Params, alg: Alg, rng: &mut ChaCha8Rng) -> Result<JacobianCase> {
    let k = k_of(p)?;
    let r = p.r;
    let (a, b, nu) = levi_pair(alg, k, rng);
    let id = Mat::identity(alg, r - k);
    let c = Mat::block_diag(&[&a, &id, &id, &b]);
    // ū′ = c·ū·c⁻¹ is conjugation by g = c⁻¹
    Ok(JacobianCase { sub: Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?, g: c.inverse()?, nu })
}

fn split_of(p: &Params) -> Result<(usize, usize)> {
    p.split.filter(|(a, b)| a + b == p.r).ok_or_else(|| GroupError::BadSize("needs r = r′ + r″".into()))
}

pub fn switch_u(p: &Params, alg: Alg, rng: &mut ChaCha8Rng) -> Result<JacobianCase> {
    let (r1, r2) = split_of(p)?;
    let u = Mat::unipotent(alg, &[r2, r1, r1, r2], &[(0, 1, &Mat::random(alg, r2, r1, rng)), (2, 3, &Mat::random(alg, r1, r2, rng))]);
    let sub = xbar_for(p)?;
    let g = if p.n < p.r { u.inverse()? } else { j_lower(p.n, p.r, &u)?.inverse()? };
    Ok(JacobianCase { sub, g, nu: q(1) })
}

pub fn mid_xbar(p: &Params, alg: Alg, rng: &mut ChaCha8Rng) -> Result<JacobianCase> {
    let (_, r2) = split_of(p)?;
    if p.n < r2 {
        return Err(GroupError::BadSize("needs r″ ≤ n".into()));
    }
    let n2 = p.n - r2;
    let xb = Mat::unipotent(alg, &[r2, n2, 1, n2, r2], &[(1, 0, &Mat::random(alg, n2, r2, rng)), (4, 3, &Mat::random(alg, r2, n2, rng))]);
    Ok(JacobianCase { sub: Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?, g: j_upper(p.n, p.r, &xb)?, nu: q(1) })
}

pub fn jacobian_builder(name: &str) -> Option<JacobianBuilder> {
    let b: JacobianBuilder = match name {
        "identity" => identity,
        "pbar" => pbar,
        "c_levi" => c_levi,
        "switch_u" => switch_u,
        "mid_xbar" => mid_xbar,
        _ => return None,
    };
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn scaling_a_block_scales_the_determinant() {
        let alg = Alg::Split;
        let sub = Subgroup::new(SubgroupKind::XbarUpper, 1, 3).unwrap();
        let mut g = Mat::identity(alg, 6);
        let two = alg.int(2);
        g.set(0, 0, two.clone());
        // only column 0 of A (one entry, ℓ = 1) is scaled by 2 in both components
        assert_eq!(conjugation_determinant(&sub, &g).unwrap(), q(4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = Params { n: 1, r: 3, k: Some(1), split: None };
        let case = pbar(&p, alg, &mut rng).unwrap();
        assert_eq!(jacobian_exponent(&case.sub, &case.g, &case.nu).unwrap(), -1);
    }
}
