//! Sums over valuation shells with certified geometric tails.

use lg_par::Mode;
use lg_symbolic::LaurentRational;
use num_complex::Complex64;

use crate::error::{GodementError, Result};

/// Coefficients below this, relative to the summed magnitudes, are round-off.
const CANCEL: f64 = 1e-10;

/// Σ_i w_i·z_i, returning exactly zero when the sum cancels to round-off.
pub fn weighted_sum(q: u64, items: Vec<(Complex64, LaurentRational)>) -> Result<LaurentRational> {
    let mut acc = LaurentRational::zero(q);
    let mut mass = 0.0;
    for (w, z) in items {
        if w.norm() == 0.0 || z.is_zero() {
            continue;
        }
        mass += w.norm() * z.num().max_abs();
        acc = acc.add(&z.scale(w))?;
    }
    if acc.num().max_abs() <= CANCEL * mass {
        return Ok(LaurentRational::zero(q));
    }
    Ok(acc)
}

/// Whether two shell values agree, treating values at round-off level as zero.
pub fn agree(a: &LaurentRational, b: &LaurentRational, tol: f64) -> bool {
    let tiny = |z: &LaurentRational| z.is_zero() || z.num().max_abs() < 1e-13;
    if tiny(a) && tiny(b) {
        return true;
    }
    lg_symbolic::lr_equal(a, b, tol)
}

/// A tail law T_{v±1} = c·X^m·T_v.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    pub c: Complex64,
    pub m: i32,
}

/// Σ_{v ∈ Z} T_v, where T_v is computed explicitly on [lo, hi] and follows
/// `down` below lo and `up` above hi. Two extra shells on each side are
/// computed and must obey the law.
pub fn two_sided<F>(q: u64, lo: i32, hi: i32, down: Ratio, up: Ratio, mode: Mode, shell: F) -> Result<LaurentRational>
where
    F: Fn(i32) -> Result<LaurentRational> + Sync + Send,
{
    let hi = hi.max(lo + 1);
    let first = lo - 2;
    let n = (hi + 2 - first + 1) as usize;
    let vals: Vec<Result<LaurentRational>> = lg_par::map_range(mode, n, |i| shell(first + i as i32));
    let vals: Vec<LaurentRational> = vals.into_iter().collect::<Result<_>>()?;
    let t = |v: i32| &vals[(v - first) as usize];
    for (v, nb, r) in [(lo, lo - 1, down), (lo - 1, lo - 2, down), (hi, hi + 1, up), (hi + 1, hi + 2, up)] {
        let want = t(v).mul_monomial(r.c, r.m);
        if !agree(t(nb), &want, 1e-9) {
            return Err(GodementError::NonStabilizingShells(format!("shell {nb} breaks the tail law from shell {v}")));
        }
    }
    let mut acc = LaurentRational::zero(q);
    for v in lo + 1..hi {
        acc = acc.add(t(v))?;
    }
    for (v, r) in [(lo, down), (hi, up)] {
        if !t(v).is_zero() {
            let geo = LaurentRational::geometric(q, Complex64::new(1.0, 0.0), r.c, r.m)?;
            acc = acc.add(&t(v).mul(&geo)?)?;
        }
    }
    Ok(acc)
}
