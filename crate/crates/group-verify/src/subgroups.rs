//! Unipotent subgroups described by block patterns, and their characters.
//!
//! Every group here has the form {I + X} where X ranges over a block pattern
//! that is closed under products. The GL version takes X freely in the
//! pattern; the unitary version is generated by exponentials of the unitary
//! projection of such X.

use rand::Rng;

use crate::error::{GroupError, Result};
use crate::matrix::Mat;
use crate::scalar::{q_frac, Alg, K};
use crate::structures::{exp_nilpotent, is_unitary, unitary_lie_projection};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Full,
    StrictUpper,
}

/// Free blocks of a square block matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    sizes: Vec<usize>,
    slots: Vec<(usize, usize, Slot)>,
}

impl Pattern {
    pub fn new(sizes: Vec<usize>, slots: Vec<(usize, usize, Slot)>) -> Self {
        Self { sizes, slots }
    }

    pub fn dim(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    fn offset(&self, i: usize) -> usize {
        self.sizes[..i].iter().sum()
    }

    /// Global positions of the free entries, in slot order then row-major.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &(bi, bj, slot) in &self.slots {
            let (r0, c0) = (self.offset(bi), self.offset(bj));
            for i in 0..self.sizes[bi] {
                for j in 0..self.sizes[bj] {
                    if slot == Slot::Full || i < j {
                        out.push((r0 + i, c0 + j));
                    }
                }
            }
        }
        out
    }

    /// Whether g − I is supported on the free positions.
    pub fn contains(&self, g: &Mat) -> bool {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return false;
        }
        let mut free = vec![false; n * n];
        for (i, j) in self.positions() {
            free[i * n + j] = true;
        }
        let alg = g.alg();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = g.get(i, j);
                if free[i * n + j] {
                    true
                } else if i == j {
                    alg.is_one(v)
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn coords(&self, g: &Mat) -> Vec<K> {
        self.positions().into_iter().map(|(i, j)| g.get(i, j).clone()).collect()
    }

    /// I + X with X given by its free coordinates.
    pub fn from_coords(&self, alg: Alg, c: &[K]) -> Mat {
        let mut g = Mat::identity(alg, self.dim());
        for ((i, j), v) in self.positions().into_iter().zip(c) {
            g.set(i, j, v.clone());
        }
        g
    }

    pub fn random_nilpotent<R: Rng + ?Sized>(&self, alg: Alg, rng: &mut R) -> Mat {
        let mut x = Mat::zeros(alg, self.dim(), self.dim());
        for (i, j) in self.positions() {
            x.set(i, j, alg.random(rng, 3));
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    /// X̄^{n,r} ⊂ GL_{2r} (n < r): [[I_r, 0], [D, I_r]], D = [[A, B], [0, C]].
    XbarUpper,
    /// X̄_{n,r} ⊂ GL_{2n+1} (n ≥ r): A in block (2,1), B in block (5,4).
    XbarLower,
    /// Y_{n,r} ⊂ GL_{2n+1} (n ≥ r).
    YLower,
    /// Y^{n,r} ⊂ GL_{2r} (n < r).
    YUpper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    kind: SubgroupKind,
    n: usize,
    r: usize,
    pattern: Pattern,
}

impl Subgroup {
    pub fn new(kind: SubgroupKind, n: usize, r: usize) -> Result<Self> {
        use Slot::*;
        let upper = matches!(kind, SubgroupKind::XbarUpper | SubgroupKind::YUpper);
        if r == 0 || (upper && n >= r) || (!upper && n < r) {
            return Err(GroupError::BadSize(format!("{kind:?} is not defined for n = {n}, r = {r}")));
        }
        let pattern = if upper {
            let l = r - n - 1;
            let sizes = vec![n + 1, l, l, n + 1];
            let slots = match kind {
                SubgroupKind::XbarUpper => vec![(2, 0, Full), (2, 1, Full), (3, 1, Full)],
                _ => vec![(0, 1, Full), (1, 1, StrictUpper), (2, 0, Full), (2, 1, Full), (2, 2, StrictUpper), (2, 3, Full), (3, 1, Full)],
            };
            Pattern::new(sizes, slots)
        } else {
            let m = n - r;
            let sizes = vec![r, m, 1, m, r];
            let slots = match kind {
                SubgroupKind::XbarLower => vec![(1, 0, Full), (4, 3, Full)],
                _ => vec![
                    (0, 3, Full),
                    (1, 0, Full),
                    (1, 1, StrictUpper),
                    (1, 2, Full),
                    (1, 3, Full),
                    (1, 4, Full),
                    (2, 3, Full),
                    (3, 3, StrictUpper),
                    (4, 3, Full),
                ],
            };
            Pattern::new(sizes, slots)
        };
        Ok(Self { kind, n, r, pattern })
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// True when the group is trivial for these parameters.
    pub fn is_trivial(&self) -> bool {
        self.pattern.positions().is_empty()
    }

    pub fn random_gl<R: Rng + ?Sized>(&self, alg: Alg, rng: &mut R) -> Mat {
        Mat::identity(alg, self.pattern.dim()).add(&self.pattern.random_nilpotent(alg, rng))
    }

    pub fn random_unitary<R: Rng + ?Sized>(&self, alg: Alg, rng: &mut R) -> Mat {
        let x = self.pattern.random_nilpotent(alg, rng);
        exp_nilpotent(&unitary_lie_projection(&x).scale_q(&q_frac(1, 2)))
    }

    pub fn contains_gl(&self, g: &Mat) -> bool {
        self.pattern.contains(g)
    }

    pub fn contains_unitary(&self, g: &Mat) -> bool {
        self.pattern.contains(g) && is_unitary(g)
    }

    /// The entries a character of the group is built from, as elements of the
    /// algebra. Two elements have the same character value for every additive
    /// character exactly when these vectors agree.
    ///
    /// X̄^{n,r}: A_{ℓ,n+1} − C_{11} on the GL group; on the unitary group
    /// C_{11} = −θ(A_{ℓ,n+1}), so A_{ℓ,n+1} alone determines the value.
    /// Y_{n,r}: the superdiagonals of z₁ and z₂, the last entry of x₁ and the
    /// first entry of x₂. Y^{n,r}: the superdiagonals of z₁, z₂ together with
    /// (a₁)_{ℓ,n+1} + (b₁)_{ℓ,1} and (a₂)_{11} + (b₂)_{n+1,1}.
    pub fn character(&self, g: &Mat, unitary: bool) -> Vec<K> {
        let (n, r) = (self.n, self.r);
        match self.kind {
            SubgroupKind::XbarLower => Vec::new(),
            SubgroupKind::XbarUpper => {
                let l = r - n - 1;
                if l == 0 {
                    return Vec::new();
                }
                let a = g.get(r + l - 1, n);
                if unitary {
                    vec![a.clone()]
                } else {
                    vec![a.sub(g.get(r + l, n + 1))]
                }
            }
            SubgroupKind::YLower => {
                let m = n - r;
                if m == 0 {
                    return Vec::new();
                }
                let (o1, o2, o3) = (r, r + m, r + m + 1);
                let mut out: Vec<K> = (1..m).map(|i| g.get(o1 + i - 1, o1 + i).clone()).collect();
                out.push(g.get(o1 + m - 1, o2).clone());
                out.push(g.get(o2, o3).clone());
                out.extend((1..m).map(|i| g.get(o3 + i - 1, o3 + i).clone()));
                out
            }
            SubgroupKind::YUpper => {
                let l = r - n - 1;
                if l == 0 {
                    return Vec::new();
                }
                let (o1, o2, o3) = (n + 1, n + 1 + l, n + 1 + 2 * l);
                let mut out: Vec<K> = (1..l).map(|i| g.get(o2 + i - 1, o2 + i).clone()).collect();
                out.extend((1..l).map(|i| g.get(o1 + i - 1, o1 + i).clone()));
                out.push(g.get(o2 + l - 1, n).add(g.get(o2 + l - 1, o3)));
                out.push(g.get(o3, o1).add(g.get(n, o1)));
                out
            }
        }
    }
}
