use std::sync::Arc;

use lg_padic::{EtaleElt, PAdic};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{CharError, Result};
use crate::units::{unit_group, Base, UnitGroup};

/// e(num/den) = exp(2πi·num/den).
pub fn root_of_unity(num: i64, den: u64) -> Complex64 {
    let r = num.rem_euclid(den as i64) as u64;
    match (r * 4).checked_div(den) {
        _ if r == 0 => Complex64::new(1.0, 0.0),
        _ if 2 * r == den => Complex64::new(-1.0, 0.0),
        _ if 4 * r == den => Complex64::new(0.0, 1.0),
        _ if 4 * r == 3 * den => Complex64::new(0.0, -1.0),
        _ => Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / den as f64),
    }
}

/// A character of F^× or of E^× (E a field) of finite depth.
///
/// On units it is stored by exact rational phases on a basis of
/// (O/p^d)^×; on the uniformizer (p, or the chosen ϖ_E) by a complex value.
#[derive(Clone, Debug)]
pub struct MultChar {
    base: Base,
    group: Arc<UnitGroup>,
    k: Vec<u64>,
    unif: Complex64,
}

impl MultChar {
    pub fn trivial(base: Base) -> Result<Self> {
        Ok(Self { base, group: unit_group(&base, 0)?, k: vec![], unif: Complex64::new(1.0, 0.0) })
    }

    /// Unramified character with the given value on the uniformizer.
    pub fn unramified(base: Base, unif: Complex64) -> Result<Self> {
        Ok(Self { unif, ..Self::trivial(base)? })
    }

    /// Character of level `level` with χ(g_i) = e(k_i/o_i) on the computed
    /// basis, reduced to its true depth.
    pub fn from_generator_phases(base: Base, level: u32, k: Vec<u64>, unif: Complex64) -> Result<Self> {
        let group = unit_group(&base, level)?;
        if k.len() != group.gens.len() {
            return Err(CharError::BadSpec(format!(
                "{} generator phases given, group has {} generators",
                k.len(),
                group.gens.len()
            )));
        }
        let k = k.iter().zip(&group.orders).map(|(a, o)| a % o).collect();
        Self { base, group, k, unif }.minimized()
    }

    /// Character of level `level` whose value on a unit class is e(f(key)).
    /// `f` must be a homomorphism; it is only sampled on generators.
    pub fn from_phase_fn<G>(base: Base, level: u32, unif: Complex64, f: G) -> Result<Self>
    where
        G: Fn(u64) -> Result<(u64, u64)>,
    {
        let group = unit_group(&base, level)?;
        let mut k = Vec::with_capacity(group.gens.len());
        for (g, o) in group.gens.iter().zip(&group.orders) {
            let (n, den) = f(*g)?;
            let t = n as u128 * *o as u128;
            if t % den as u128 != 0 {
                return Err(CharError::Internal(format!("phase {n}/{den} has order not dividing {o}")));
            }
            k.push(((t / den as u128) as u64) % o);
        }
        Self { base, group, k, unif }.minimized()
    }

    /// Uniformly random phases at level `level` and a random root of unity of
    /// order dividing `unif_order` on the uniformizer.
    pub fn random<R: Rng + ?Sized>(base: Base, level: u32, unif_order: u64, rng: &mut R) -> Result<Self> {
        let group = unit_group(&base, level)?;
        let k = group.orders.iter().map(|&o| rng.gen_range(0..o)).collect();
        let unif = root_of_unity(rng.gen_range(0..unif_order) as i64, unif_order);
        Self::from_generator_phases(base, level, k, unif)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Smallest d with χ trivial on 1 + p^d (for E: on 1 + p_E^d).
    pub fn depth(&self) -> u32 {
        self.group.level
    }

    pub fn is_unramified(&self) -> bool {
        self.depth() == 0
    }

    /// Value on the uniformizer (p for F, p or δ for E).
    pub fn unif_value(&self) -> Complex64 {
        self.unif
    }

    pub fn generator_phases(&self) -> &[u64] {
        &self.k
    }

    /// Phase of a unit class at this character's level, as num/den.
    pub fn unit_phase(&self, key: u64) -> Result<(u64, u64)> {
        let g = &self.group;
        let e = g.dlog(key).ok_or_else(|| CharError::Internal(format!("key {key} is not a unit class")))?;
        let den = g.exponent;
        let mut num: u128 = 0;
        for ((ei, ki), oi) in e.iter().zip(&self.k).zip(&g.orders) {
            num += (*ei as u128 * *ki as u128 % *oi as u128) * (den / oi) as u128;
        }
        Ok(((num % den as u128) as u64, den))
    }

    /// Phase of a unit class given at level `level >= depth`.
    pub fn unit_phase_at(&self, key: u64, level: u32) -> Result<(u64, u64)> {
        let k = self.base.reduce_key(key, level, self.depth());
        self.unit_phase(k)
    }

    pub fn eval_unit_key(&self, key: u64, level: u32) -> Result<Complex64> {
        let (n, d) = self.unit_phase_at(key, level)?;
        Ok(root_of_unity(n as i64, d))
    }

    /// χ(x) for x ∈ F^×.
    pub fn eval_f(&self, x: &PAdic) -> Result<Complex64> {
        if !matches!(self.base, Base::F(_)) {
            return Err(CharError::BaseMismatch("F-argument for an E-character".into()));
        }
        let v = x.valuation().ok_or(CharError::ZeroArgument)?;
        let u = x.unit_part()?;
        let key = self.base.key_of_f_unit(&u, self.depth())?;
        let (n, d) = self.unit_phase(key)?;
        Ok(self.unif.powi(v) * root_of_unity(n as i64, d))
    }

    /// χ(z) for z ∈ E^×.
    pub fn eval_e(&self, z: &EtaleElt) -> Result<Complex64> {
        let Base::E(e) = self.base else {
            return Err(CharError::BaseMismatch("E-argument for an F-character".into()));
        };
        if e.is_zero(z) {
            return Err(CharError::ZeroArgument);
        }
        let (v, u) = e.unit_part(z)?;
        let key = self.base.key_of_e_unit(&e, &u, self.depth())?;
        let (n, d) = self.unit_phase(key)?;
        Ok(self.unif.powi(v) * root_of_unity(n as i64, d))
    }

    fn lift_key(&self, key: u64, from: u32, to: u32) -> u64 {
        if from == 0 {
            return 1;
        }
        let p = self.base.p();
        let (al, _) = self.base.levels(from);
        let (al2, _) = self.base.levels(to);
        let (a, b) = (key % p.pow(al), key / p.pow(al));
        a + p.pow(al2) * b
    }

    fn minimized(self) -> Result<Self> {
        let mut cur = self;
        while cur.depth() > 0 {
            let d = cur.depth();
            let one_below = cur.base.one_key(d - 1);
            let mut trivial = true;
            for &key in &cur.group.keys {
                if cur.base.reduce_key(key, d, d - 1) == one_below && cur.unit_phase(key)?.0 != 0 {
                    trivial = false;
                    break;
                }
            }
            if !trivial {
                break;
            }
            let lower = unit_group(&cur.base, d - 1)?;
            let mut k = Vec::with_capacity(lower.gens.len());
            for (g, o) in lower.gens.iter().zip(&lower.orders) {
                let lifted = cur.lift_key(*g, d - 1, d);
                let (n, den) = cur.unit_phase(lifted)?;
                k.push(((n as u128 * *o as u128 / den as u128) as u64) % o);
            }
            cur = Self { base: cur.base, group: lower, k, unif: cur.unif };
        }
        Ok(cur)
    }

    fn level_pair(&self, other: &Self) -> Result<u32> {
        if self.base != other.base {
            return Err(CharError::BaseMismatch("characters on different groups".into()));
        }
        Ok(self.depth().max(other.depth()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let level = self.level_pair(other)?;
        Self::from_phase_fn(self.base, level, self.unif * other.unif, |g| {
            let (a, da) = self.unit_phase_at(g, level)?;
            let (b, db) = other.unit_phase_at(g, level)?;
            let den = da / gcd(da, db) * db;
            Ok(((a * (den / da) + b * (den / db)) % den, den))
        })
    }

    pub fn inv(&self) -> Self {
        let k = self.k.iter().zip(&self.group.orders).map(|(a, o)| (o - a) % o).collect();
        Self { base: self.base, group: self.group.clone(), k, unif: 1.0 / self.unif }
    }

    pub fn pow(&self, n: i64) -> Self {
        let k = self
            .k
            .iter()
            .zip(&self.group.orders)
            .map(|(a, o)| ((*a as i128 * n as i128).rem_euclid(*o as i128)) as u64)
            .collect();
        Self { base: self.base, group: self.group.clone(), k, unif: self.unif.powi(n as i32) }
            .minimized()
            .expect("power of a character")
    }

    /// a ↦ χ(θ(a)) (E only).
    pub fn conj_theta(&self) -> Result<Self> {
        let Base::E(e) = self.base else {
            return Err(CharError::NotAField);
        };
        let pi = e.uniformizer()?;
        let unif = self.eval_e(&e.theta(&pi))?;
        let d = self.depth();
        Self::from_phase_fn(self.base, d, unif, |g| self.unit_phase(self.base.theta_key(d, g)))
    }

    /// a ↦ χ(θ(a))^{-1}.
    pub fn conjugate_dual(&self) -> Result<Self> {
        Ok(self.conj_theta()?.inv())
    }

    /// The restriction χ|_{F^×} of an E-character.
    pub fn restrict_to_f(&self) -> Result<Self> {
        let Base::E(e) = self.base else {
            return Err(CharError::NotAField);
        };
        let f = e.field();
        let level = self.depth().div_ceil(e.e());
        let unif = self.eval_e(&e.from_f(f.uniformizer()))?;
        Self::from_phase_fn(Base::F(f), level, unif, |g| {
            let x = e.from_f(f.from_residue(g));
            let key = if self.depth() == 0 { 0 } else { e.residue_key(&x, self.depth())? };
            self.unit_phase(key)
        })
    }

    /// The character a ↦ χ(N(a)) of E^× for an F-character χ.
    pub fn compose_norm(&self, e: lg_padic::EtaleAlgebra) -> Result<Self> {
        if !matches!(self.base, Base::F(_)) {
            return Err(CharError::BaseMismatch("norm composition needs an F-character".into()));
        }
        let level = self.depth() * e.e();
        let unif = self.eval_f(&e.norm(&e.uniformizer()?))?;
        Self::from_phase_fn(Base::E(e), level, unif, |g| {
            if level == 0 {
                return Ok((0, 1));
            }
            let z = e.from_key(g, level);
            let n = e.norm(&z);
            let key = self.base.key_of_f_unit(&n, self.depth())?;
            self.unit_phase(key)
        })
    }

    /// Agreement of two characters on generators and the uniformizer.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.base != other.base || self.depth() != other.depth() {
            return false;
        }
        self.k == other.k && (self.unif - other.unif).norm() <= tol
    }

    /// χ(−1).
    pub fn at_minus_one(&self) -> Result<Complex64> {
        match self.base {
            Base::F(f) => self.eval_f(&f.from_i64(-1)),
            Base::E(e) => self.eval_e(&e.from_f(e.field().from_i64(-1))),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
