use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{PadicError, Result};
use crate::number::{pow_u64, PAdic, PAdicField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EtaleKind {
    Split,
    Unramified,
    Ramified,
}

impl EtaleKind {
    pub fn name(&self) -> &'static str {
        match self {
            EtaleKind::Split => "split",
            EtaleKind::Unramified => "unramified",
            EtaleKind::Ramified => "ramified",
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, EtaleKind::Split)
    }
}

/// The rank two algebra F[δ]/(δ² − Δ). In the split case Δ = 1 and
/// a + bδ corresponds to the pair (a + b, a − b).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaleAlgebra {
    field: PAdicField,
    kind: EtaleKind,
    delta_sq: PAdic,
}

/// a + bδ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaleElt {
    pub a: PAdic,
    pub b: PAdic,
}

impl EtaleAlgebra {
    pub fn split(field: PAdicField) -> Self {
        Self { field, kind: EtaleKind::Split, delta_sq: field.one() }
    }

    /// Δ is the smallest positive non-residue.
    pub fn unramified(field: PAdicField) -> Self {
        let d = field.smallest_nonresidue();
        Self { field, kind: EtaleKind::Unramified, delta_sq: field.from_i64(d as i64) }
    }

    /// Δ = p.
    pub fn ramified(field: PAdicField) -> Self {
        Self { field, kind: EtaleKind::Ramified, delta_sq: field.uniformizer() }
    }

    pub fn of_kind(field: PAdicField, kind: EtaleKind) -> Self {
        match kind {
            EtaleKind::Split => Self::split(field),
            EtaleKind::Unramified => Self::unramified(field),
            EtaleKind::Ramified => Self::ramified(field),
        }
    }

    /// A quadratic field F(√Δ) for a non-square Δ of valuation 0 or 1.
    pub fn with_delta(field: PAdicField, delta_sq: PAdic) -> Result<Self> {
        let v = delta_sq
            .valuation()
            .ok_or_else(|| PadicError::BadDelta("Δ must be nonzero".into()))?;
        let kind = match v {
            0 => {
                if field.legendre(delta_sq.unit()) == 1 {
                    return Err(PadicError::BadDelta("Δ is a square".into()));
                }
                EtaleKind::Unramified
            }
            1 => EtaleKind::Ramified,
            _ => return Err(PadicError::BadDelta(format!("valuation {v} not in {{0, 1}}"))),
        };
        Ok(Self { field, kind, delta_sq })
    }

    pub fn field(&self) -> PAdicField {
        self.field
    }

    pub fn kind(&self) -> EtaleKind {
        self.kind
    }

    pub fn is_field(&self) -> bool {
        self.kind.is_field()
    }

    /// Δ = δ².
    pub fn delta_sq(&self) -> PAdic {
        self.delta_sq
    }

    /// Residue degree f.
    pub fn f(&self) -> u32 {
        match self.kind {
            EtaleKind::Unramified => 2,
            _ => 1,
        }
    }

    /// Ramification index e.
    pub fn e(&self) -> u32 {
        match self.kind {
            EtaleKind::Ramified => 2,
            _ => 1,
        }
    }

    pub fn q_e(&self) -> u64 {
        self.field.q().pow(self.f())
    }

    pub fn elt(&self, a: PAdic, b: PAdic) -> EtaleElt {
        EtaleElt { a, b }
    }

    pub fn from_f(&self, a: PAdic) -> EtaleElt {
        EtaleElt { a, b: self.field.zero() }
    }

    pub fn zero(&self) -> EtaleElt {
        self.from_f(self.field.zero())
    }

    pub fn one(&self) -> EtaleElt {
        self.from_f(self.field.one())
    }

    pub fn delta(&self) -> EtaleElt {
        EtaleElt { a: self.field.zero(), b: self.field.one() }
    }

    /// Split pair (x, y) as an element: a = (x + y)/2, b = (x − y)/2.
    pub fn from_pair(&self, x: PAdic, y: PAdic) -> EtaleElt {
        let half = self.field.from_ratio(1, 2).expect("p odd");
        EtaleElt { a: x.add(&y).mul(&half), b: x.sub(&y).mul(&half) }
    }

    /// Split coordinates (a + b, a − b).
    pub fn to_pair(&self, z: &EtaleElt) -> (PAdic, PAdic) {
        (z.a.add(&z.b), z.a.sub(&z.b))
    }

    pub fn add(&self, x: &EtaleElt, y: &EtaleElt) -> EtaleElt {
        EtaleElt { a: x.a.add(&y.a), b: x.b.add(&y.b) }
    }

    pub fn sub(&self, x: &EtaleElt, y: &EtaleElt) -> EtaleElt {
        EtaleElt { a: x.a.sub(&y.a), b: x.b.sub(&y.b) }
    }

    pub fn neg(&self, x: &EtaleElt) -> EtaleElt {
        EtaleElt { a: x.a.neg(), b: x.b.neg() }
    }

    pub fn mul(&self, x: &EtaleElt, y: &EtaleElt) -> EtaleElt {
        let a = x.a.mul(&y.a).add(&self.delta_sq.mul(&x.b.mul(&y.b)));
        let b = x.a.mul(&y.b).add(&x.b.mul(&y.a));
        EtaleElt { a, b }
    }

    pub fn scale(&self, c: &PAdic, x: &EtaleElt) -> EtaleElt {
        EtaleElt { a: c.mul(&x.a), b: c.mul(&x.b) }
    }

    pub fn theta(&self, x: &EtaleElt) -> EtaleElt {
        EtaleElt { a: x.a, b: x.b.neg() }
    }

    pub fn trace(&self, x: &EtaleElt) -> PAdic {
        x.a.add(&x.a)
    }

    pub fn norm(&self, x: &EtaleElt) -> PAdic {
        x.a.mul(&x.a).sub(&self.delta_sq.mul(&x.b.mul(&x.b)))
    }

    pub fn is_zero(&self, x: &EtaleElt) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }

    pub fn approx_eq(&self, x: &EtaleElt, y: &EtaleElt) -> bool {
        x.a.approx_eq(&y.a) && x.b.approx_eq(&y.b)
    }

    pub fn inv(&self, x: &EtaleElt) -> Result<EtaleElt> {
        let n = self.norm_exact(x)?;
        let ni = n.inv()?;
        Ok(self.scale(&ni, &self.theta(x)))
    }

    pub fn div(&self, x: &EtaleElt, y: &EtaleElt) -> Result<EtaleElt> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// The norm computed without cancellation loss: for fields the two terms
    /// a² and Δb² never cancel in valuation; for split algebras N = xy.
    fn norm_exact(&self, x: &EtaleElt) -> Result<PAdic> {
        match self.kind {
            EtaleKind::Split => {
                let (u, v) = self.to_pair(x);
                Ok(u.mul(&v))
            }
            _ => {
                if self.is_zero(x) {
                    return Err(PadicError::DivisionByZero);
                }
                Ok(self.norm(x))
            }
        }
    }

    /// v_F(N z), so that |z|_E = q^{-abs_exp(z)}.
    pub fn abs_exp(&self, x: &EtaleElt) -> Result<i32> {
        match self.kind {
            EtaleKind::Split => {
                let (u, v) = self.to_pair(x);
                match (u.valuation(), v.valuation()) {
                    (Some(a), Some(b)) => Ok(a + b),
                    _ => Err(PadicError::DivisionByZero),
                }
            }
            _ => Ok(self.v_e(x)? * self.f() as i32),
        }
    }

    /// |z|_E as a real number.
    pub fn abs_e(&self, x: &EtaleElt) -> Result<f64> {
        Ok((self.field.q() as f64).powi(-self.abs_exp(x)?))
    }

    /// Normalized valuation of E (fields only).
    pub fn v_e(&self, x: &EtaleElt) -> Result<i32> {
        let va = x.a.val() as i64;
        let vb = x.b.val() as i64;
        if x.a.is_zero() && x.b.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        match self.kind {
            EtaleKind::Unramified => Ok(va.min(vb) as i32),
            EtaleKind::Ramified => Ok((2 * va).min(2 * vb + 1) as i32),
            EtaleKind::Split => Err(PadicError::NotAField),
        }
    }

    /// The uniformizer p (unramified) or δ (ramified).
    pub fn uniformizer(&self) -> Result<EtaleElt> {
        match self.kind {
            EtaleKind::Unramified => Ok(self.from_f(self.field.uniformizer())),
            EtaleKind::Ramified => Ok(self.delta()),
            EtaleKind::Split => Err(PadicError::NotAField),
        }
    }

    /// ϖ_E^k for any integer k.
    pub fn uniformizer_pow(&self, k: i32) -> Result<EtaleElt> {
        match self.kind {
            EtaleKind::Unramified => Ok(self.from_f(self.field.pow_p(k))),
            EtaleKind::Ramified => {
                let half = k.div_euclid(2);
                let base = self.from_f(self.delta_sq.pow(half as i64)?);
                if k.rem_euclid(2) == 1 {
                    Ok(self.mul(&base, &self.delta()))
                } else {
                    Ok(base)
                }
            }
            EtaleKind::Split => Err(PadicError::NotAField),
        }
    }

    /// Splits a nonzero field element as ϖ_E^v · u with u a unit.
    pub fn unit_part(&self, x: &EtaleElt) -> Result<(i32, EtaleElt)> {
        let v = self.v_e(x)?;
        let u = self.mul(x, &self.uniformizer_pow(-v)?);
        Ok((v, u))
    }

    /// Coordinate levels (α, β) of the ideal p_E^d in O_E = Z_p ⊕ Z_p δ.
    pub fn box_levels(&self, d: u32) -> (u32, u32) {
        match self.kind {
            EtaleKind::Ramified => (d.div_ceil(2), d / 2),
            _ => (d, d),
        }
    }

    /// Integer key of the class of an integral x modulo p_E^d.
    pub fn residue_key(&self, x: &EtaleElt, d: u32) -> Result<u64> {
        let (al, be) = self.box_levels(d);
        let ra = x.a.residue(al)?;
        let rb = x.b.residue(be)?;
        Ok(ra + pow_u64(self.field.p(), al) * rb)
    }

    /// Inverse of [`residue_key`](Self::residue_key): the canonical lift.
    pub fn from_key(&self, key: u64, d: u32) -> EtaleElt {
        let (al, _) = self.box_levels(d);
        let m = pow_u64(self.field.p(), al);
        EtaleElt { a: self.field.from_residue(key % m), b: self.field.from_residue(key / m) }
    }

    /// Number of residue classes of O_E modulo p_E^d.
    pub fn box_size(&self, d: u32) -> u64 {
        let (al, be) = self.box_levels(d);
        pow_u64(self.field.p(), al + be)
    }

    /// Whether an integral element is a unit of O_E (fields only).
    pub fn is_unit(&self, x: &EtaleElt) -> bool {
        match self.kind {
            EtaleKind::Ramified => x.a.is_unit(),
            EtaleKind::Unramified => {
                let ra = x.a.residue(1).unwrap_or(0);
                let rb = x.b.residue(1).unwrap_or(0);
                ra != 0 || rb != 0
            }
            EtaleKind::Split => {
                let (u, v) = self.to_pair(x);
                u.is_unit() && v.is_unit()
            }
        }
    }

    /// Keys of the units of O_E modulo p_E^d (fields only), ascending.
    pub fn unit_keys(&self, d: u32) -> Vec<u64> {
        let n = self.box_size(d);
        let (al, _) = self.box_levels(d);
        let m = pow_u64(self.field.p(), al);
        let p = self.field.p();
        (0..n)
            .filter(|&k| {
                let ra = k % m;
                let rb = k / m;
                match self.kind {
                    EtaleKind::Ramified => ra % p != 0,
                    _ => ra % p != 0 || rb % p != 0,
                }
            })
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, vmin: i32, vmax: i32) -> EtaleElt {
        let a = self.field.random(rng, vmin, vmax);
        let b = self.field.random(rng, vmin, vmax);
        EtaleElt { a, b }
    }

    /// Tame Hilbert symbol (a, b)_F for p odd.
    pub fn hilbert_symbol(field: &PAdicField, a: &PAdic, b: &PAdic) -> Result<i32> {
        let (al, be) = match (a.valuation(), b.valuation()) {
            (Some(x), Some(y)) => (x as i64, y as i64),
            _ => return Err(PadicError::DivisionByZero),
        };
        let u = a.unit_part()?.residue(1)?;
        let v = b.unit_part()?.residue(1)?;
        let eps = ((field.p() - 1) / 2) as i64;
        let mut s = if (al * be * eps).rem_euclid(2) == 1 { -1 } else { 1 };
        if be.rem_euclid(2) == 1 {
            s *= field.legendre(u);
        }
        if al.rem_euclid(2) == 1 {
            s *= field.legendre(v);
        }
        Ok(s)
    }

    /// Membership in the norm group N(E^×).
    pub fn is_norm(&self, x: &PAdic) -> Result<bool> {
        let v = x.valuation().ok_or(PadicError::DivisionByZero)?;
        match self.kind {
            EtaleKind::Split => Ok(true),
            EtaleKind::Unramified => Ok(v.rem_euclid(2) == 0),
            EtaleKind::Ramified => Ok(Self::hilbert_symbol(&self.field, &self.delta_sq, x)? == 1),
        }
    }

    /// a/θ(a).
    pub fn ratio(&self, a: &EtaleElt) -> Result<EtaleElt> {
        self.div(a, &self.theta(a))
    }

    /// An element a with a/θ(a) = alpha: a = 1 + alpha, or δ when 1 + alpha = 0.
    pub fn hilbert90(&self, alpha: &EtaleElt) -> Result<EtaleElt> {
        if !self.is_field() {
            return Err(PadicError::NotAField);
        }
        let n1 = self.norm(alpha).sub(&self.field.one());
        if !n1.is_zero() {
            return Err(PadicError::NotNormOne);
        }
        let a = self.add(&self.one(), alpha);
        if self.is_zero(&a) {
            Ok(self.delta())
        } else {
            Ok(a)
        }
    }

    /// One representative per class of E¹ modulo E¹ ∩ (1 + p_E^m), ordered by
    /// residue key.
    pub fn e1_cosets(&self, m: u32) -> Result<Vec<EtaleElt>> {
        if !self.is_field() {
            return Err(PadicError::NotAField);
        }
        let prec = self.field.precision();
        if m == 0 || m + 2 > prec {
            return Err(PadicError::LevelTooDeep { level: m, precision: prec });
        }
        let mut seen: BTreeMap<u64, EtaleElt> = BTreeMap::new();
        let mut bases = vec![self.one()];
        if self.kind == EtaleKind::Ramified {
            bases.push(self.delta());
        }
        for key in self.unit_keys(m) {
            let u = self.from_key(key, m);
            for b in &bases {
                let a = self.mul(b, &u);
                let alpha = self.ratio(&a)?;
                let k = self.residue_key(&alpha, m)?;
                seen.entry(k).or_insert(alpha);
            }
        }
        Ok(seen.into_values().collect())
    }

    /// |E¹ / E¹_m| from the closed formula.
    pub fn e1_index(&self, m: u32) -> u64 {
        let q = self.field.q();
        match self.kind {
            EtaleKind::Unramified => (q + 1) * q.pow(m - 1),
            EtaleKind::Ramified => 2 * q.pow(m / 2),
            EtaleKind::Split => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(p: u64) -> PAdicField {
        PAdicField::new(p, 12).unwrap()
    }

    #[test]
    fn delta_basics() {
        for e in [EtaleAlgebra::unramified(field(3)), EtaleAlgebra::ramified(field(3))] {
            let d = e.delta();
            assert!(e.approx_eq(&e.theta(&d), &e.neg(&d)));
            assert!(e.trace(&d).is_zero());
            assert!(e.norm(&d).approx_eq(&e.delta_sq().neg()));
        }
        let s = EtaleAlgebra::split(field(5));
        let f = s.field();
        let z = s.from_pair(f.from_i64(3), f.from_i64(7));
        assert!(s.norm(&z).approx_eq(&f.from_i64(21)));
        assert!(s.trace(&z).approx_eq(&f.from_i64(10)));
        let (x, y) = s.to_pair(&s.theta(&z));
        assert!(x.approx_eq(&f.from_i64(7)) && y.approx_eq(&f.from_i64(3)));
    }

    #[test]
    fn abs_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3, 5, 7] {
            for kind in [EtaleKind::Split, EtaleKind::Unramified, EtaleKind::Ramified] {
                let e = EtaleAlgebra::of_kind(field(p), kind);
                for _ in 0..100 {
                    let z = e.random(&mut rng, -2, 2);
                    let w = e.random(&mut rng, -2, 2);
                    let lhs = e.abs_exp(&e.mul(&z, &w)).unwrap();
                    assert_eq!(lhs, e.abs_exp(&z).unwrap() + e.abs_exp(&w).unwrap());
                }
            }
        }
    }

    #[test]
    fn hilbert90_cases() {
        let e = EtaleAlgebra::unramified(field(3));
        assert!(e.approx_eq(&e.hilbert90(&e.one()).unwrap(), &e.from_f(e.field().from_i64(2))));
        let m1 = e.neg(&e.one());
        assert!(e.approx_eq(&e.hilbert90(&m1).unwrap(), &e.delta()));
        let bad = e.from_f(e.field().from_i64(2));
        assert_eq!(e.hilbert90(&bad), Err(PadicError::NotNormOne));
    }

    #[test]
    fn coset_counts_small() {
        let e = EtaleAlgebra::unramified(field(3));
        assert_eq!(e.e1_cosets(1).unwrap().len(), 4);
        let r = EtaleAlgebra::ramified(field(3));
        assert_eq!(r.e1_cosets(1).unwrap().len(), 2);
        assert!(matches!(r.e1_cosets(11), Err(PadicError::LevelTooDeep { .. })));
    }
}
