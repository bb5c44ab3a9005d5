use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{approx_gcd, LaurentPoly};

pub const DEGREE_CAP: usize = 256;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolicError {
    #[error("DivideByZeroRational")]
    DivideByZeroRational,
    #[error("DegreeCap: span {0} exceeds {DEGREE_CAP}")]
    DegreeCap(usize),
    #[error("QMismatch: {0} vs {1}")]
    QMismatch(u64, u64),
    #[error("BadSubstitution: exponent must be nonzero")]
    BadSubstitution,
}

pub type Result<T> = std::result::Result<T, SymbolicError>;

/// A ratio of Laurent polynomials in X = q^{-s}.
///
/// The denominator has lowest exponent 0 and lowest coefficient 1; monomial
/// factors live in the numerator.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentRational {
    q: u64,
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct LaurentJson {
    pub q: u64,
    pub num: Vec<(i32, f64, f64)>,
    pub den: Vec<(i32, f64, f64)>,
}

impl LaurentRational {
    pub fn new(q: u64, num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(SymbolicError::DivideByZeroRational);
        }
        let mut r = Self { q, num, den };
        r.normalize()?;
        Ok(r)
    }

    pub fn from_poly(q: u64, num: LaurentPoly) -> Result<Self> {
        Self::new(q, num, LaurentPoly::constant(Complex64::new(1.0, 0.0)))
    }

    pub fn zero(q: u64) -> Self {
        Self { q, num: LaurentPoly::zero(), den: LaurentPoly::constant(Complex64::new(1.0, 0.0)) }
    }

    pub fn one(q: u64) -> Self {
        Self::constant(q, Complex64::new(1.0, 0.0))
    }

    pub fn constant(q: u64, c: Complex64) -> Self {
        Self::monomial(q, c, 0)
    }

    /// c·X^e.
    pub fn monomial(q: u64, c: Complex64, e: i32) -> Self {
        Self { q, num: LaurentPoly::monomial(c, e), den: LaurentPoly::constant(Complex64::new(1.0, 0.0)) }
    }

    /// c / (1 − r·X^m), the sum of a geometric series in X^m.
    pub fn geometric(q: u64, c: Complex64, r: Complex64, m: i32) -> Result<Self> {
        let den = LaurentPoly::from_terms(&[(0, Complex64::new(1.0, 0.0)), (m, -r)]);
        Self::new(q, LaurentPoly::constant(c), den)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = LaurentPoly::constant(Complex64::new(1.0, 0.0));
            return Ok(());
        }
        let shift = self.den.lo();
        self.den = self.den.shift(-shift);
        self.num = self.num.shift(-shift);
        let lead = self.den.coeff(0);
        if lead != Complex64::new(1.0, 0.0) {
            self.den = self.den.scale(1.0 / lead);
            self.num = self.num.scale(1.0 / lead);
        }
        let span = self.num.span().max(self.den.span());
        if span > DEGREE_CAP {
            return Err(SymbolicError::DegreeCap(span));
        }
        Ok(())
    }

    fn check_q(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(SymbolicError::QMismatch(self.q, other.q));
        }
        Ok(())
    }

    /// Cancels common polynomial factors of numerator and denominator when
    /// an approximate gcd is certified.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() || self.den.span() == 0 {
            return self.clone();
        }
        let nlo = self.num.lo();
        let n = self.num.shift(-nlo);
        if let Some(g) = approx_gcd(n.coeffs(), self.den.coeffs(), 1e-11) {
            let (qn, _) = LaurentPoly::divrem(n.coeffs(), &g);
            let (qd, _) = LaurentPoly::divrem(self.den.coeffs(), &g);
            let tn: Vec<(i32, Complex64)> = qn.iter().enumerate().map(|(i, v)| (nlo + i as i32, *v)).collect();
            let td: Vec<(i32, Complex64)> = qd.iter().enumerate().map(|(i, v)| (i as i32, *v)).collect();
            if let Ok(r) = Self::new(self.q, LaurentPoly::from_terms(&tn), LaurentPoly::from_terms(&td)) {
                return r;
            }
        }
        self.clone()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_q(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if polys_close(&self.den, &other.den) {
            return Self::new(self.q, self.num.add(&other.num), self.den.clone());
        }
        if let Some(g) = approx_gcd(self.den.coeffs(), other.den.coeffs(), 1e-11) {
            let (qa, _) = LaurentPoly::divrem(self.den.coeffs(), &g);
            let (qb, _) = LaurentPoly::divrem(other.den.coeffs(), &g);
            let qa = poly_from(&qa);
            let qb = poly_from(&qb);
            let num = self.num.mul(&qb).add(&other.num.mul(&qa));
            let den = self.den.mul(&qb);
            return Self::new(self.q, num, den);
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(self.q, num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        Self { q: self.q, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_q(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.q));
        }
        let r = Self::new(self.q, self.num.mul(&other.num), self.den.mul(&other.den))?;
        if r.den.span() > 0 && r.num.span() > 0 {
            Ok(r.reduce())
        } else {
            Ok(r)
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut r = self.clone();
        r.num = r.num.scale(c);
        if r.num.is_zero() {
            r.den = LaurentPoly::constant(Complex64::new(1.0, 0.0));
        }
        r
    }

    /// Multiply by c·X^e.
    pub fn mul_monomial(&self, c: Complex64, e: i32) -> Self {
        let mut r = self.scale(c);
        r.num = r.num.shift(e);
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(SymbolicError::DivideByZeroRational);
        }
        Self::new(self.q, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_q(other)?;
        self.mul(&other.inv()?)
    }

    /// X ↦ c·X^m.
    pub fn subst_monomial(&self, c: Complex64, m: i32) -> Result<Self> {
        if m == 0 {
            return Err(SymbolicError::BadSubstitution);
        }
        Self::new(self.q, self.num.subst(c, m), self.den.subst(c, m))
    }

    /// X ↦ X^f.
    pub fn pow_subst(&self, f: i32) -> Result<Self> {
        if f < 1 {
            return Err(SymbolicError::BadSubstitution);
        }
        self.subst_monomial(Complex64::new(1.0, 0.0), f)
    }

    /// s ↦ 1 − s, that is X ↦ q^{-1}X^{-1}.
    pub fn reflect(&self) -> Result<Self> {
        self.subst_monomial(Complex64::new(1.0 / self.q as f64, 0.0), -1)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.num.eval(x) / self.den.eval(x)
    }

    /// Value at s, i.e. at X = q^{-s}.
    pub fn eval_s(&self, s: Complex64) -> Complex64 {
        let x = (-(self.q as f64).ln() * s).exp();
        self.eval(x)
    }

    /// The constant c when the function equals c identically.
    pub fn as_constant(&self, tol: f64) -> Option<Complex64> {
        if self.is_zero() {
            return Some(Complex64::new(0.0, 0.0));
        }
        let (j, _) = self
            .den
            .terms()
            .into_iter()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())?;
        let c = self.num.coeff(j) / self.den.coeff(j);
        if lr_equal(self, &Self::constant(self.q, c), tol) {
            Some(c)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> LaurentJson {
        let conv = |p: &LaurentPoly| p.terms().into_iter().map(|(e, v)| (e, v.re, v.im)).collect();
        LaurentJson { q: self.q, num: conv(&self.num), den: conv(&self.den) }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        let conv = |v: &[(i32, f64, f64)]| {
            LaurentPoly::from_terms(&v.iter().map(|t| (t.0, Complex64::new(t.1, t.2))).collect::<Vec<_>>())
        };
        Self::new(j.q, conv(&j.num), conv(&j.den))
    }
}

fn poly_from(v: &[Complex64]) -> LaurentPoly {
    LaurentPoly::from_terms(&v.iter().enumerate().map(|(i, c)| (i as i32, *c)).collect::<Vec<_>>())
}

fn polys_close(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    if a.lo() != b.lo() || a.hi() != b.hi() {
        return false;
    }
    let scale = a.max_abs().max(b.max_abs());
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= 1e-14 * scale)
}

/// Cross-multiplied comparison: max |coeff of a·den(b) − b·den(a)| against
/// tol times the largest coefficient of either product.
pub fn lr_equal(a: &LaurentRational, b: &LaurentRational, tol: f64) -> bool {
    lr_deviation(a, b) <= tol
}

/// Relative coefficient deviation used by [`lr_equal`].
pub fn lr_deviation(a: &LaurentRational, b: &LaurentRational) -> f64 {
    if a.q != b.q {
        return f64::INFINITY;
    }
    let l = a.num.mul(&b.den);
    let r = b.num.mul(&a.den);
    let scale = l.max_abs().max(r.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    let lo = l.lo().min(r.lo());
    let hi = if l.is_zero() { r.hi() } else if r.is_zero() { l.hi() } else { l.hi().max(r.hi()) };
    let mut dev: f64 = 0.0;
    for e in lo..=hi {
        dev = dev.max((l.coeff(e) - r.coeff(e)).norm());
    }
    dev / scale
}

fn fmt_poly(p: &LaurentPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, v) in p.terms() {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if v.im.abs() < 1e-15 {
            write!(f, "{:.6}", v.re)?;
        } else {
            write!(f, "({:.6}{:+.6}i)", v.re, v.im)?;
        }
        match e {
            0 => {}
            1 => write!(f, "X")?,
            _ => write!(f, "X^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for LaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_poly(&self.num, f)?;
        write!(f, ") / (")?;
        fmt_poly(&self.den, f)?;
        write!(f, ")")
    }
}
