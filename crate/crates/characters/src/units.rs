use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use lg_padic::{EtaleAlgebra, EtaleElt, EtaleKind, PAdic, PAdicField};

use crate::error::{CharError, Result};

/// The multiplicative group a character lives on: F^× or E^× for a field E.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Base {
    F(PAdicField),
    E(EtaleAlgebra),
}

impl Base {
    pub fn p(&self) -> u64 {
        match self {
            Base::F(f) => f.p(),
            Base::E(e) => e.field().p(),
        }
    }

    pub fn field(&self) -> PAdicField {
        match self {
            Base::F(f) => *f,
            Base::E(e) => e.field(),
        }
    }

    pub(crate) fn levels(&self, d: u32) -> (u32, u32) {
        match self {
            Base::F(_) => (d, 0),
            Base::E(e) => e.box_levels(d),
        }
    }

    fn delta_res(&self, d: u32) -> u64 {
        match self {
            Base::F(_) => 0,
            Base::E(e) => {
                let (al, _) = e.box_levels(d);
                e.delta_sq().residue(al).expect("Δ is integral")
            }
        }
    }

    fn id(&self, d: u32) -> GroupId {
        let tag = match self {
            Base::F(_) => 0,
            Base::E(e) => match e.kind() {
                EtaleKind::Unramified => 1,
                EtaleKind::Ramified => 2,
                EtaleKind::Split => 3,
            },
        };
        let prec = self.field().precision();
        let delta = match self {
            Base::F(_) => 0,
            Base::E(e) => e.delta_sq().residue(prec - 1).unwrap_or(0) * 4 + e.delta_sq().val() as u64,
        };
        GroupId { p: self.p(), tag, delta, level: d }
    }

    pub(crate) fn unit_keys(&self, d: u32) -> Vec<u64> {
        match self {
            Base::F(f) => {
                let m = f.p().pow(d);
                (0..m.max(1)).filter(|k| d == 0 || k % f.p() != 0).collect()
            }
            Base::E(e) => {
                if d == 0 {
                    vec![0]
                } else {
                    e.unit_keys(d)
                }
            }
        }
    }

    /// The key of 1 at level d.
    pub(crate) fn one_key(&self, d: u32) -> u64 {
        if d == 0 {
            0
        } else {
            1
        }
    }

    pub(crate) fn mul_keys(&self, d: u32, x: u64, y: u64) -> u64 {
        if d == 0 {
            return 0;
        }
        let p = self.p() as u128;
        let (al, be) = self.levels(d);
        let ma = p.pow(al);
        match self {
            Base::F(_) => ((x as u128 * y as u128) % ma) as u64,
            Base::E(_) => {
                let mb = p.pow(be);
                let (a1, b1) = (x as u128 % ma, x as u128 / ma);
                let (a2, b2) = (y as u128 % ma, y as u128 / ma);
                let dl = self.delta_res(d) as u128;
                let a = (a1 * a2 % ma + dl * (b1 * b2 % ma) % ma) % ma;
                let b = if mb == 1 { 0 } else { (a1 * b2 + a2 * b1) % mb };
                (a + ma * b) as u64
            }
        }
    }

    /// θ on keys (E only; identity on F).
    pub(crate) fn theta_key(&self, d: u32, x: u64) -> u64 {
        match self {
            Base::F(_) => x,
            Base::E(_) => {
                if d == 0 {
                    return 0;
                }
                let p = self.p();
                let (al, be) = self.levels(d);
                let ma = p.pow(al);
                let mb = p.pow(be);
                let (a, b) = (x % ma, x / ma);
                a + ma * ((mb - b % mb) % mb)
            }
        }
    }

    /// Reduce a key from level `from` to level `to <= from`.
    pub(crate) fn reduce_key(&self, x: u64, from: u32, to: u32) -> u64 {
        if to == 0 {
            return 0;
        }
        let p = self.p();
        let (al, _) = self.levels(from);
        let (al2, be2) = self.levels(to);
        let ma = p.pow(al);
        let (a, b) = (x % ma, x / ma);
        (a % p.pow(al2)) + p.pow(al2) * (b % p.pow(be2))
    }

    /// Key at level d of the unit of O_F (for F) as an element of the base.
    pub(crate) fn key_of_f_unit(&self, u: &PAdic, d: u32) -> Result<u64> {
        if d == 0 {
            return Ok(0);
        }
        u.certify(self.levels(d).0 as i64)?;
        Ok(u.residue(self.levels(d).0)?)
    }

    pub(crate) fn key_of_e_unit(&self, e: &EtaleAlgebra, u: &EtaleElt, d: u32) -> Result<u64> {
        if d == 0 {
            return Ok(0);
        }
        let (al, be) = e.box_levels(d);
        u.a.certify(al as i64)?;
        if be > 0 {
            u.b.certify(be as i64)?;
        }
        Ok(e.residue_key(u, d)?)
    }

}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct GroupId {
    p: u64,
    tag: u8,
    delta: u64,
    level: u32,
}

/// (O/p^d)^× for the base ring, with an explicit basis and discrete logs.
#[derive(Debug)]
pub struct UnitGroup {
    pub(crate) level: u32,
    pub(crate) keys: Vec<u64>,
    pub(crate) index: HashMap<u64, usize>,
    pub(crate) gens: Vec<u64>,
    pub(crate) orders: Vec<u64>,
    pub(crate) dlog: Vec<Vec<u64>>,
    pub(crate) exponent: u64,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut a = 0;
        while n % d == 0 {
            n /= d;
            a += 1;
        }
        if a > 0 {
            out.push((d, a));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl UnitGroup {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn dlog(&self, key: u64) -> Option<&[u64]> {
        self.index.get(&key).map(|&i| self.dlog[i].as_slice())
    }

    fn build(base: &Base, d: u32) -> Result<UnitGroup> {
        let keys = base.unit_keys(d);
        let index: HashMap<u64, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let one = base.one_key(d);
        let n = keys.len() as u64;
        let mul = |x: u64, y: u64| base.mul_keys(d, x, y);
        let pow = |x: u64, mut e: u64| {
            let mut acc = one;
            let mut b = x;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, b);
                }
                b = mul(b, b);
                e >>= 1;
            }
            acc
        };
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        let primes = factorize(n);
        if matches!(base, Base::F(_)) && d > 0 {
            // cyclic: the smallest residue generating the whole group
            let g = keys
                .iter()
                .copied()
                .find(|&x| primes.iter().all(|&(l, _)| pow(x, n / l) != one))
                .ok_or_else(|| CharError::Internal("no primitive root".into()))?;
            gens.push(g);
            orders.push(n);
        }
        for (l, a) in if gens.is_empty() { primes } else { vec![] } {
            let size = l.pow(a);
            let m = n / size;
            let mut sub: Vec<u64> = keys.iter().map(|&x| pow(x, m)).collect::<HashSet<_>>().into_iter().collect();
            sub.sort_unstable();
            // H is the subgroup generated so far, with exponent vectors
            let mut h: HashMap<u64, Vec<u64>> = HashMap::from([(one, vec![])]);
            let mut basis: Vec<(u64, u64)> = Vec::new();
            while (h.len() as u64) < size {
                let ord_mod_h = |y: u64| {
                    let mut k = 1;
                    let mut z = y;
                    while !h.contains_key(&z) {
                        z = mul(z, y);
                        k += 1;
                    }
                    (k, z)
                };
                let mut cands: Vec<(u64, u64, u64)> = sub.iter().map(|&y| {
                    let (k, z) = ord_mod_h(y);
                    (k, y, z)
                }).collect();
                let best = cands.iter().map(|c| c.0).max().unwrap();
                cands.retain(|c| c.0 == best);
                let mut chosen = None;
                for (k, y, z) in cands {
                    let e = &h[&z];
                    if e.iter().all(|ei| ei % k == 0) {
                        let mut y2 = y;
                        for (i, ei) in e.iter().enumerate() {
                            let (b, ob) = basis[i];
                            let t = (ob - (ei / k) % ob) % ob;
                            y2 = mul(y2, pow(b, t));
                        }
                        chosen = Some((y2, k));
                        break;
                    }
                }
                let (g, og) = chosen.ok_or_else(|| CharError::Internal("no complementable element".into()))?;
                let mut h2 = HashMap::new();
                for (x, ex) in &h {
                    let mut z = *x;
                    for j in 0..og {
                        let mut v = ex.clone();
                        v.push(j);
                        h2.insert(z, v);
                        z = mul(z, g);
                    }
                }
                h = h2;
                basis.push((g, og));
            }
            for (g, o) in basis {
                gens.push(g);
                orders.push(o);
            }
        }
        // full discrete log table by mixed radix enumeration
        let mut dlog = vec![Vec::new(); keys.len()];
        let mut seen = 0usize;
        let total: u64 = orders.iter().product();
        if total != n {
            return Err(CharError::Internal(format!("basis orders multiply to {total}, group has {n}")));
        }
        let mut exps = vec![0u64; gens.len()];
        let mut cur = one;
        loop {
            let i = *index.get(&cur).ok_or_else(|| CharError::Internal("product left the group".into()))?;
            if !dlog[i].is_empty() || (gens.is_empty() && seen > 0) {
                return Err(CharError::Internal("basis is not independent".into()));
            }
            dlog[i] = exps.clone();
            if gens.is_empty() {
                dlog[i] = vec![];
            }
            seen += 1;
            let mut j = 0;
            loop {
                if j == gens.len() {
                    break;
                }
                exps[j] += 1;
                cur = mul(cur, gens[j]);
                if exps[j] == orders[j] {
                    exps[j] = 0;
                    j += 1;
                } else {
                    break;
                }
            }
            if j == gens.len() {
                break;
            }
        }
        if seen as u64 != n {
            return Err(CharError::Internal("discrete log table incomplete".into()));
        }
        let exponent = orders.iter().fold(1, |acc, &o| acc / gcd(acc, o) * o);
        Ok(UnitGroup { level: d, keys, index, gens, orders, dlog, exponent })
    }
}

type Cache = Mutex<HashMap<GroupId, Arc<UnitGroup>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The unit group at level d, built once per process.
pub fn unit_group(base: &Base, d: u32) -> Result<Arc<UnitGroup>> {
    if let Base::E(e) = base {
        if !e.is_field() {
            return Err(CharError::NotAField);
        }
    }
    let id = base.id(d);
    if let Some(g) = cache().lock().unwrap().get(&id) {
        return Ok(g.clone());
    }
    let g = Arc::new(UnitGroup::build(base, d)?);
    cache().lock().unwrap().insert(id, g.clone());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_groups_are_cyclic() {
        for p in [3, 5, 7] {
            let f = PAdicField::new(p, 12).unwrap();
            for d in 1..=3 {
                let g = unit_group(&Base::F(f), d).unwrap();
                assert_eq!(g.order() as u64, (p - 1) * p.pow(d - 1));
                assert_eq!(g.exponent(), g.order() as u64);
            }
        }
    }

    #[test]
    fn e_groups_have_right_order() {
        for p in [3, 5, 7] {
            let f = PAdicField::new(p, 12).unwrap();
            for e in [EtaleAlgebra::unramified(f), EtaleAlgebra::ramified(f)] {
                let qe = e.q_e();
                for d in 1..=3 {
                    let g = unit_group(&Base::E(e), d).unwrap();
                    assert_eq!(g.order() as u64, (qe - 1) * qe.pow(d - 1));
                    let prod: u64 = g.generator_orders().iter().product();
                    assert_eq!(prod, g.order() as u64);
                }
            }
        }
    }
}
