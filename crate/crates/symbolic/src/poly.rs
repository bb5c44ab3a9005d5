use num_complex::Complex64;

/// Coefficients below this fraction of the largest one are dropped.
const TRIM: f64 = 1e-14;

/// A Laurent polynomial Σ c_i X^{lo + i}. The zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    lo: i32,
    c: Vec<Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { lo: 0, c: Vec::new() }
    }

    pub fn constant(v: Complex64) -> Self {
        Self::monomial(v, 0)
    }

    pub fn monomial(v: Complex64, e: i32) -> Self {
        let mut p = Self { lo: e, c: vec![v] };
        p.trim();
        p
    }

    /// From (exponent, coefficient) pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i32, Complex64)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (e, v) in terms {
            c[(e - lo) as usize] += v;
        }
        let mut p = Self { lo, c };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.c.len() as i32 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    /// Width hi − lo, the number of gaps between the extreme exponents.
    pub fn span(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, e: i32) -> Complex64 {
        let i = e - self.lo;
        if i < 0 || i as usize >= self.c.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.c[i as usize]
        }
    }

    pub fn terms(&self) -> Vec<(i32, Complex64)> {
        self.c.iter().enumerate().filter(|(_, v)| v.norm() > 0.0).map(|(i, v)| (self.lo + i as i32, *v)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn trim(&mut self) {
        let m = self.max_abs();
        if m == 0.0 || !m.is_finite() {
            if m == 0.0 {
                self.c.clear();
                self.lo = 0;
            }
            return;
        }
        for v in self.c.iter_mut() {
            if v.norm() <= TRIM * m {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        let first = self.c.iter().position(|v| v.norm() > 0.0).unwrap();
        let last = self.c.iter().rposition(|v| v.norm() > 0.0).unwrap();
        self.c = self.c[first..=last].to_vec();
        self.lo += first as i32;
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut c = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (i, v) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            c[(other.lo - lo) as usize + i] += v;
        }
        let mut p = Self { lo, c };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        Self { lo: self.lo, c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut p = Self { lo: self.lo, c: self.c.iter().map(|v| v * s).collect() };
        p.trim();
        p
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Complex64::new(0.0, 0.0); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        let mut p = Self { lo: self.lo + other.lo, c };
        p.trim();
        p
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc * x.powi(self.lo)
    }

    /// X ↦ c·X^m for m ≠ 0.
    pub fn subst(&self, c: Complex64, m: i32) -> Self {
        let terms: Vec<(i32, Complex64)> =
            self.terms().into_iter().map(|(e, v)| (e * m, v * c.powi(e))).collect();
        Self::from_terms(&terms)
    }

    /// Long division of ordinary polynomials (both with lo = 0 implied by
    /// shifting): returns (quotient, remainder) with exponents relative to
    /// the inputs' lowest terms.
    pub(crate) fn divrem(a: &[Complex64], b: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = b[db];
        let mut qv = vec![Complex64::new(0.0, 0.0); a.len() - db];
        for i in (0..qv.len()).rev() {
            let coef = r[i + db] / lead;
            qv[i] = coef;
            for j in 0..=db {
                r[i + j] -= coef * b[j];
            }
        }
        r.truncate(db);
        (qv, r)
    }
}

fn norm_of(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn strip_high(v: &mut Vec<Complex64>, tol: f64) {
    while let Some(last) = v.last() {
        if last.norm() <= tol {
            v.pop();
        } else {
            break;
        }
    }
}

/// Approximate monic gcd of two ordinary polynomials given by coefficient
/// vectors (constant term first). Returns `None` unless a factor of positive
/// degree is found and certified by exact-division residuals below `tol`.
pub(crate) fn approx_gcd(a: &[Complex64], b: &[Complex64], tol: f64) -> Option<Vec<Complex64>> {
    if a.len() < 2 || b.len() < 2 {
        return None;
    }
    let scale = norm_of(a).max(norm_of(b));
    let (mut x, mut y) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
    let nx = norm_of(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let ny = norm_of(&y);
    y.iter_mut().for_each(|v| *v /= ny);
    loop {
        let (_, mut r) = LaurentPoly::divrem(&x, &y);
        strip_high(&mut r, 1e-10);
        if r.is_empty() || norm_of(&r) <= 1e-10 {
            break;
        }
        let nr = norm_of(&r);
        r.iter_mut().for_each(|v| *v /= nr);
        x = y;
        y = r;
        if y.len() < 2 {
            return None;
        }
    }
    if y.len() < 2 {
        return None;
    }
    let lead = *y.last().unwrap();
    let g: Vec<Complex64> = y.iter().map(|v| v / lead).collect();
    for p in [a, b] {
        let (_, r) = LaurentPoly::divrem(p, &g);
        if norm_of(&r) > tol * scale {
            return None;
        }
    }
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = LaurentPoly::from_terms(&[(0, c(1.0)), (1, c(-1.0))]);
        let b = LaurentPoly::from_terms(&[(-1, c(2.0)), (0, c(1.0))]);
        let p = a.mul(&b);
        assert_eq!(p.lo(), -1);
        let x = Complex64::new(0.3, 0.1);
        assert!((p.eval(x) - a.eval(x) * b.eval(x)).norm() < 1e-14);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = [c(1.0), c(-0.5)];
        let g1 = LaurentPoly::from_terms(&[(0, c(1.0)), (1, c(2.0))]);
        let g2 = LaurentPoly::from_terms(&[(0, c(3.0)), (2, c(1.0))]);
        let fp = LaurentPoly::from_terms(&[(0, f[0]), (1, f[1])]);
        let a = fp.mul(&g1);
        let b = fp.mul(&g2);
        let g = approx_gcd(a.coeffs(), b.coeffs(), 1e-10).unwrap();
        assert_eq!(g.len(), 2);
        assert!((g[0] - c(-2.0)).norm() < 1e-9);
        assert!(approx_gcd(g1.coeffs(), g2.coeffs(), 1e-10).is_none());
    }
}
