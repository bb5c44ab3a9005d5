use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::error::{PadicError, Result};

/// Absolute precision used for an exact zero.
const EXACT: i64 = i64::MAX / 4;

pub(crate) fn pow_u64(p: u64, k: u32) -> u64 {
    p.pow(k)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn modinv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The field Q_p truncated to a fixed number of significant digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PAdicField {
    p: u64,
    prec: u32,
}

impl PAdicField {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(PadicError::NonOddPrime(p));
        }
        if prec < 6 {
            return Err(PadicError::PrecisionTooSmall(prec));
        }
        if (prec as f64) * (p as f64).log2() > 62.0 {
            return Err(PadicError::PrecisionTooLarge(prec));
        }
        Ok(Self { p, prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue field cardinality.
    pub fn q(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn zero(&self) -> PAdic {
        PAdic::exact_zero(self.p)
    }

    pub fn one(&self) -> PAdic {
        self.from_i64(1)
    }

    /// The uniformizer p.
    pub fn uniformizer(&self) -> PAdic {
        self.from_i64(self.p as i64)
    }

    /// p^k for any integer k.
    pub fn pow_p(&self, k: i32) -> PAdic {
        PAdic { p: self.p as u32, val: k, unit: 1, rel: self.prec }
    }

    pub fn from_i64(&self, n: i64) -> PAdic {
        if n == 0 {
            return self.zero();
        }
        let mut v = 0;
        let mut m = n.unsigned_abs();
        while m % self.p == 0 {
            m /= self.p;
            v += 1;
        }
        let modulus = pow_u64(self.p, self.prec);
        let mut u = m % modulus;
        if n < 0 {
            u = (modulus - u) % modulus;
        }
        PAdic { p: self.p as u32, val: v, unit: u, rel: self.prec }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<PAdic> {
        if den == 0 {
            return Err(PadicError::DivisionByZero);
        }
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Builds p^val * unit with unit read modulo p^precision.
    pub fn from_parts(&self, val: i32, unit: u64) -> PAdic {
        let modulus = pow_u64(self.p, self.prec);
        let u = unit % modulus;
        assert!(u % self.p != 0, "unit part must be prime to p");
        PAdic { p: self.p as u32, val, unit: u, rel: self.prec }
    }

    /// The element of Z_p with the given residue modulo p^k, lifted by zeros.
    pub fn from_residue(&self, r: u64) -> PAdic {
        if r == 0 {
            self.zero()
        } else {
            self.from_i64(r as i64)
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> PAdic {
        let modulus = pow_u64(self.p, self.prec);
        loop {
            let u = rng.gen_range(1..modulus);
            if u % self.p != 0 {
                return PAdic { p: self.p as u32, val: 0, unit: u, rel: self.prec };
            }
        }
    }

    /// A random nonzero element with valuation in `vmin..=vmax`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, vmin: i32, vmax: i32) -> PAdic {
        let v = rng.gen_range(vmin..=vmax);
        let mut x = self.random_unit(rng);
        x.val = v;
        x
    }

    /// Legendre symbol of a unit residue, as +1 or -1.
    pub fn legendre(&self, a: u64) -> i32 {
        let a = a % self.p;
        assert!(a != 0);
        let mut r = 1u64;
        let mut b = a;
        let mut e = (self.p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    pub fn smallest_nonresidue(&self) -> u64 {
        (2..self.p).find(|&a| self.legendre(a) == -1).expect("p odd")
    }

    /// Smallest generator of (Z/p)^x.
    pub fn primitive_root(&self) -> u64 {
        let n = self.p - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| {
                factors.iter().all(|&f| {
                    let mut r = 1u64;
                    for _ in 0..(n / f) {
                        r = r * g % self.p;
                    }
                    r != 1
                })
            })
            .unwrap_or(1)
    }
}

/// An element p^val * unit of Q_p. `rel` counts the significant digits of
/// `unit`; a zero has `rel == 0` and stores its absolute precision in `val`.
#[derive(Clone, Copy, Debug)]
pub struct PAdic {
    p: u32,
    val: i32,
    unit: u64,
    rel: u32,
}

impl PartialEq for PAdic {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.p == other.p && self.val == other.val && self.rel == other.rel && self.unit == other.unit
    }
}

impl PAdic {
    fn exact_zero(p: u64) -> Self {
        PAdic { p: p as u32, val: i32::MAX, unit: 0, rel: 0 }
    }

    fn zero_at(p: u32, abs: i64) -> Self {
        let val = if abs >= EXACT || abs >= i32::MAX as i64 { i32::MAX } else { abs as i32 };
        PAdic { p, val, unit: 0, rel: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn is_zero(&self) -> bool {
        self.rel == 0
    }

    /// Valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Valuation with zero mapped to `i32::MAX`.
    pub fn val(&self) -> i32 {
        if self.is_zero() {
            i32::MAX
        } else {
            self.val
        }
    }

    /// Unit part residue, known modulo p^rel.
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn rel_precision(&self) -> u32 {
        self.rel
    }

    /// Absolute precision: the element is known modulo p^abs.
    fn abs(&self) -> i64 {
        if self.is_zero() {
            if self.val == i32::MAX {
                EXACT
            } else {
                self.val as i64
            }
        } else {
            self.val as i64 + self.rel as i64
        }
    }

    pub fn abs_precision(&self) -> Option<i64> {
        let a = self.abs();
        if a >= EXACT {
            None
        } else {
            Some(a)
        }
    }

    /// |x|_F as a real number.
    pub fn norm_abs(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            (self.p as f64).powi(-self.val)
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.val >= 0
    }

    fn shifted_unit(&self, shift: i64, width: u32) -> u64 {
        if self.is_zero() || shift >= width as i64 {
            return 0;
        }
        let m = pow_u64(self.p as u64, width);
        mulmod(self.unit % m, pow_u64(self.p as u64, shift as u32), m)
    }

    fn from_sum(p: u32, v0: i64, s: u64, width: u32, abs: i64) -> PAdic {
        if s == 0 {
            return PAdic::zero_at(p, abs);
        }
        let mut k = 0u32;
        let mut s = s;
        while s % p as u64 == 0 {
            s /= p as u64;
            k += 1;
        }
        PAdic { p, val: (v0 + k as i64) as i32, unit: s, rel: width - k }
    }

    pub fn add(&self, other: &PAdic) -> PAdic {
        debug_assert_eq!(self.p, other.p);
        let abs = self.abs().min(other.abs());
        if self.is_zero() && other.is_zero() {
            return PAdic::zero_at(self.p, abs);
        }
        let v0 = match (self.is_zero(), other.is_zero()) {
            (false, false) => self.val.min(other.val) as i64,
            (true, false) => other.val as i64,
            (false, true) => self.val as i64,
            _ => unreachable!(),
        };
        if abs <= v0 {
            return PAdic::zero_at(self.p, abs);
        }
        let width = (abs - v0) as u32;
        let m = pow_u64(self.p as u64, width);
        let a = self.shifted_unit(self.val as i64 - v0, width);
        let b = other.shifted_unit(other.val as i64 - v0, width);
        let s = (a as u128 + b as u128) % m as u128;
        PAdic::from_sum(self.p, v0, s as u64, width, abs)
    }

    pub fn neg(&self) -> PAdic {
        if self.is_zero() {
            return *self;
        }
        let m = pow_u64(self.p as u64, self.rel);
        PAdic { unit: m - self.unit, ..*self }
    }

    pub fn sub(&self, other: &PAdic) -> PAdic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdic) -> PAdic {
        debug_assert_eq!(self.p, other.p);
        match (self.is_zero(), other.is_zero()) {
            (true, true) => PAdic::zero_at(self.p, self.abs().saturating_add(other.abs())),
            (true, false) => PAdic::zero_at(self.p, self.abs().saturating_add(other.val as i64)),
            (false, true) => PAdic::zero_at(self.p, other.abs().saturating_add(self.val as i64)),
            (false, false) => {
                let rel = self.rel.min(other.rel);
                let m = pow_u64(self.p as u64, rel);
                PAdic {
                    p: self.p,
                    val: self.val + other.val,
                    unit: mulmod(self.unit % m, other.unit % m, m),
                    rel,
                }
            }
        }
    }

    pub fn inv(&self) -> Result<PAdic> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let m = pow_u64(self.p as u64, self.rel);
        let u = modinv(self.unit, m).expect("unit is prime to p");
        Ok(PAdic { p: self.p, val: -self.val, unit: u, rel: self.rel })
    }

    pub fn div(&self, other: &PAdic) -> Result<PAdic> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<PAdic> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = *self;
        let mut acc = *self;
        let mut e = e;
        if e == 0 {
            let rel = if self.is_zero() { 1 } else { self.rel };
            return Ok(PAdic { p: self.p, val: 0, unit: 1, rel });
        }
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base } else { acc.mul(&base) };
                first = false;
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiply by p^k.
    pub fn shift(&self, k: i32) -> PAdic {
        if self.is_zero() {
            return PAdic::zero_at(self.p, self.abs().saturating_add(k as i64));
        }
        PAdic { val: self.val + k, ..*self }
    }

    /// Unit part u with x = p^v u; errors on zero.
    pub fn unit_part(&self) -> Result<PAdic> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        Ok(PAdic { val: 0, ..*self })
    }

    /// Residue of an integral element modulo p^k.
    pub fn residue(&self, k: u32) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        if self.is_zero() {
            if self.abs() < k as i64 {
                return Err(PadicError::PrecisionLoss(format!(
                    "zero known only modulo p^{}, residue modulo p^{k} requested",
                    self.abs()
                )));
            }
            return Ok(0);
        }
        if self.val < 0 {
            return Err(PadicError::NotIntegral(self.val));
        }
        if self.val as i64 >= k as i64 {
            return Ok(0);
        }
        if self.abs() < k as i64 {
            return Err(PadicError::PrecisionLoss(format!(
                "element known modulo p^{}, residue modulo p^{k} requested",
                self.abs()
            )));
        }
        let width = k - self.val as u32;
        let m = pow_u64(self.p as u64, width);
        Ok((self.unit % m) * pow_u64(self.p as u64, self.val as u32))
    }

    /// Fractional part of x as `num / p^e` with `0 <= num < p^e`.
    pub fn frac(&self) -> Result<(u64, u32)> {
        if self.is_zero() || self.val >= 0 {
            if self.is_zero() && self.abs() < 0 {
                return Err(PadicError::PrecisionLoss("zero with negative absolute precision".into()));
            }
            return Ok((0, 0));
        }
        let e = (-self.val) as u32;
        if self.rel < e {
            return Err(PadicError::PrecisionLoss(format!(
                "fractional part needs {e} digits, only {} known",
                self.rel
            )));
        }
        let m = pow_u64(self.p as u64, e);
        Ok((self.unit % m, e))
    }

    /// Certifies that the element is known modulo p^need, with two spare digits.
    pub fn certify(&self, need: i64) -> Result<()> {
        if self.abs() < need + 2 {
            return Err(PadicError::PrecisionLoss(format!(
                "need absolute precision {} but have {}",
                need + 2,
                self.abs()
            )));
        }
        Ok(())
    }

    /// True when `self - other` vanishes at the available precision.
    pub fn approx_eq(&self, other: &PAdic) -> bool {
        self.sub(other).is_zero()
    }

    /// Compare valuations, zero being the largest.
    pub fn cmp_val(&self, other: &PAdic) -> Ordering {
        self.val().cmp(&other.val())
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            match self.abs_precision() {
                None => write!(f, "0"),
                Some(a) => write!(f, "O({}^{})", self.p, a),
            }
        } else {
            write!(f, "{}^{}*{} (+O({}^{}))", self.p, self.val, self.unit, self.p, self.abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3() -> PAdicField {
        PAdicField::new(3, 12).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(f3().q(), 3);
        assert_eq!(PAdicField::new(2, 12), Err(PadicError::NonOddPrime(2)));
        assert_eq!(PAdicField::new(9, 12), Err(PadicError::NonOddPrime(9)));
        assert_eq!(PAdicField::new(5, 4), Err(PadicError::PrecisionTooSmall(4)));
        let f5 = PAdicField::new(5, 12).unwrap();
        assert!((f5.uniformizer().norm_abs() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn small_products() {
        let f = f3();
        let x = f.from_i64(3).mul(&f.from_i64(3));
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.unit(), 1);
        assert!(f.from_i64(1).add(&f.from_i64(-1)).is_zero());
        assert_eq!(f.from_i64(-1).residue(2).unwrap(), 8);
    }

    #[test]
    fn cancellation_tracks_precision() {
        let f = f3();
        let a = f.from_i64(1 + 9);
        let b = f.from_i64(-1);
        let s = a.add(&b);
        assert_eq!(s.valuation(), Some(2));
        assert_eq!(s.rel_precision(), 10);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PAdicField::new(7, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = f.random(&mut rng, -3, 3);
            assert!(x.mul(&x.inv().unwrap()).approx_eq(&f.one()));
        }
    }

    #[test]
    fn fractional_part() {
        let f = f3();
        let x = f.from_ratio(5, 9).unwrap();
        assert_eq!(x.frac().unwrap(), (5, 2));
        let y = f.from_ratio(1, 2).unwrap();
        assert_eq!(y.frac().unwrap(), (0, 0));
    }

    #[test]
    fn primitive_roots_and_nonresidues() {
        assert_eq!(f3().primitive_root(), 2);
        assert_eq!(PAdicField::new(7, 12).unwrap().primitive_root(), 3);
        assert_eq!(PAdicField::new(7, 12).unwrap().smallest_nonresidue(), 3);
        assert_eq!(PAdicField::new(5, 12).unwrap().smallest_nonresidue(), 2);
    }
}
