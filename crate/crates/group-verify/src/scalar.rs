//! Exact scalars: ℚ(δ) with δ² = Δ, or the split algebra ℚ × ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

/// Which rank-two algebra the entries live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alg {
    /// x + yδ with δ² = `delta` (a non-square integer).
    Field { delta: i64 },
    /// (x, y) with componentwise arithmetic; θ swaps the components.
    Split,
}

/// An element of the algebra: x + yδ, or the pair (x, y).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K {
    pub x: BigRational,
    pub y: BigRational,
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl K {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &K) -> K {
        K::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &K) -> K {
        K::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> K {
        K::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, c: &BigRational) -> K {
        K::new(&self.x * c, &self.y * c)
    }
}

impl fmt::Display for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "({}, {})", self.x, self.y)
        }
    }
}

impl Alg {
    pub fn field2() -> Self {
        Alg::Field { delta: 2 }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Alg::Field { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Alg::Field { .. } => "field",
            Alg::Split => "split",
        }
    }

    pub fn zero(&self) -> K {
        K::new(BigRational::zero(), BigRational::zero())
    }

    /// The image of a rational number.
    pub fn from_q(&self, c: BigRational) -> K {
        match self {
            Alg::Field { .. } => K::new(c, BigRational::zero()),
            Alg::Split => K::new(c.clone(), c),
        }
    }

    pub fn int(&self, n: i64) -> K {
        self.from_q(q(n))
    }

    pub fn one(&self) -> K {
        self.int(1)
    }

    /// δ itself, or the pair (1, −1).
    pub fn delta(&self) -> K {
        match self {
            Alg::Field { .. } => K::new(q(0), q(1)),
            Alg::Split => K::new(q(1), q(-1)),
        }
    }

    pub fn is_one(&self, a: &K) -> bool {
        *a == self.one()
    }

    pub fn mul(&self, a: &K, b: &K) -> K {
        match self {
            Alg::Field { delta } => K::new(
                &a.x * &b.x + &a.y * &b.y * q(*delta),
                &a.x * &b.y + &a.y * &b.x,
            ),
            Alg::Split => K::new(&a.x * &b.x, &a.y * &b.y),
        }
    }

    pub fn theta(&self, a: &K) -> K {
        match self {
            Alg::Field { .. } => K::new(a.x.clone(), -&a.y),
            Alg::Split => K::new(a.y.clone(), a.x.clone()),
        }
    }

    /// N(a) = a·θ(a) ∈ ℚ.
    pub fn norm(&self, a: &K) -> BigRational {
        match self {
            Alg::Field { delta } => &a.x * &a.x - &a.y * &a.y * q(*delta),
            Alg::Split => &a.x * &a.y,
        }
    }

    /// Tr(a) = a + θ(a) ∈ ℚ.
    pub fn trace(&self, a: &K) -> BigRational {
        match self {
            Alg::Field { .. } => &a.x * q(2),
            Alg::Split => &a.x + &a.y,
        }
    }

    pub fn is_unit(&self, a: &K) -> bool {
        !self.norm(a).is_zero()
    }

    pub fn inv(&self, a: &K) -> Option<K> {
        let n = self.norm(a);
        if n.is_zero() {
            return None;
        }
        let t = self.theta(a);
        Some(K::new(&t.x / &n, &t.y / &n))
    }

    /// A random entry: a + bδ with a, b ∈ {−h..h} (pairs for the split algebra).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, h: i64) -> K {
        K::new(q(rng.gen_range(-h..=h)), q(rng.gen_range(-h..=h)))
    }

    /// A random element of norm one, β/θ(β).
    pub fn random_norm_one<R: Rng + ?Sized>(&self, rng: &mut R) -> K {
        loop {
            let b = self.random(rng, 3);
            if let Some(bi) = self.inv(&self.theta(&b)) {
                return self.mul(&b, &bi);
            }
        }
    }

    /// |N(a)| as a rational (the real absolute value of the norm).
    pub fn abs_norm(&self, a: &K) -> BigRational {
        self.norm(a).abs()
    }

    /// The two rational coordinates of `a`, used when a map is realified.
    pub fn coords(&self, a: &K) -> [BigRational; 2] {
        [a.x.clone(), a.y.clone()]
    }

    pub fn from_coords(&self, c: &[BigRational]) -> K {
        K::new(c[0].clone(), c[1].clone())
    }

    pub fn is_rational(&self, a: &K) -> bool {
        *a == self.from_q(a.x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_and_split_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for alg in [Alg::field2(), Alg::Split] {
            for _ in 0..50 {
                let a = alg.random(&mut rng, 3);
                if let Some(b) = alg.inv(&a) {
                    assert_eq!(alg.mul(&a, &b), alg.one());
                }
                let u = alg.random_norm_one(&mut rng);
                assert!(alg.norm(&u).is_one());
            }
            let d = alg.delta();
            assert_eq!(alg.mul(&d, &d), alg.from_q(q(if alg.is_field() { 2 } else { 1 })));
            assert_eq!(alg.theta(&d), d.neg());
        }
    }
}
