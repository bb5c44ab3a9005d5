//! The identity builders behind the catalog.
//!
//! Each builder draws random data for one parameter tuple, evaluates both
//! sides of its identities exactly and records the first mismatch in a
//! [`Checker`]. Builders for GL identities work with general invertible
//! matrices; the unitary ones draw from the unitary groups.

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;

use crate::error::{GroupError, Result};
use crate::matrix::Mat;
use crate::scalar::{q_frac, Alg, K};
use crate::structures::{embed, iota, is_unitary, j_lower, j_mat, j_upper, q_mat, random_unitary, s_mat, w_mat, Embedding};
use crate::subgroups::{Pattern, Slot, Subgroup, SubgroupKind};

/// One point of the parameter grid. `k` and the splitting r = r′ + r″ are
/// only set for entries that use them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: usize,
    pub r: usize,
    pub k: Option<usize>,
    pub split: Option<(usize, usize)>,
}

impl Params {
    /// ℓ = r − n − 1, defined for n < r.
    pub fn l(&self) -> Option<usize> {
        (self.n < self.r).then(|| self.r - self.n - 1)
    }

    fn need_k(&self) -> Result<usize> {
        self.k.ok_or_else(|| GroupError::BadSize("this identity needs k".into()))
    }

    fn need_split(&self) -> Result<(usize, usize)> {
        self.split.ok_or_else(|| GroupError::BadSize("this identity needs r = r′ + r″".into()))
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} r={}", self.n, self.r)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some((r1, r2)) = self.split {
            write!(f, " r'={r1} r''={r2}")?;
        }
        Ok(())
    }
}

/// Collects the outcome of one trial.
#[derive(Debug, Default)]
pub struct Checker {
    failure: Option<String>,
    empty: bool,
}

fn short(m: &Mat) -> String {
    let s = m.to_string();
    if s.chars().count() > 240 {
        format!("{}…", s.chars().take(240).collect::<String>())
    } else {
        s
    }
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eq(&mut self, what: &str, lhs: &Mat, rhs: &Mat) {
        if self.failure.is_none() && lhs != rhs {
            self.failure = Some(format!("{what}: {} != {}", short(lhs), short(rhs)));
        }
    }

    pub fn eq_k(&mut self, what: &str, lhs: &[K], rhs: &[K]) {
        if self.failure.is_none() && lhs != rhs {
            let show = |v: &[K]| v.iter().map(K::to_string).collect::<Vec<_>>().join(", ");
            self.failure = Some(format!("{what}: [{}] != [{}]", show(lhs), show(rhs)));
        }
    }

    pub fn holds(&mut self, what: &str, ok: bool) {
        if self.failure.is_none() && !ok {
            self.failure = Some(format!("{what} does not hold"));
        }
    }

    /// Marks the trial as evaluated on a degenerate (empty) block.
    pub fn empty_block(&mut self) {
        self.empty = true;
    }

    pub fn failure(&self) -> Option<&str> {
        self.failure.as_deref()
    }

    pub fn is_empty_block(&self) -> bool {
        self.empty
    }
}

pub type Builder = fn(&Params, Alg, &mut ChaCha8Rng, &mut Checker) -> Result<()>;

fn id(alg: Alg, n: usize) -> Mat {
    Mat::identity(alg, n)
}

fn rnd(alg: Alg, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    Mat::random(alg, rows, cols, rng)
}

fn half() -> BigRational {
    q_frac(1, 2)
}

fn row(m: &Mat, i: usize) -> Mat {
    m.submatrix(i, 0, 1, m.cols())
}

fn col(m: &Mat, j: usize) -> Mat {
    m.submatrix(0, j, m.rows(), 1)
}

fn scalar(m: &Mat) -> K {
    m.get(0, 0).clone()
}

fn total(alg: Alg, v: &[K]) -> K {
    v.iter().fold(alg.zero(), |acc, x| acc.add(x))
}

fn conj(g: &Mat, x: &Mat) -> Result<Mat> {
    Ok(g.inverse()?.mul(x).mul(g))
}

/// w = diag(w_{r′,r″}, w_{r″,r′}) ∈ GL_{2r}.
fn w_switch(alg: Alg, r1: usize, r2: usize) -> Mat {
    Mat::block_diag(&[&w_mat(alg, r1, r2), &w_mat(alg, r2, r1)])
}

// ---------------------------------------------------------------------------
// structure matrices and embeddings

pub fn j_squares(p: &Params, alg: Alg, _rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    for k in 1..=(2 * p.r).max(2 * p.n + 1) {
        let j = j_mat(alg, k)?;
        ck.eq(&format!("J_{k}·J_{k}"), &j.mul(&j), &id(alg, k));
    }
    Ok(())
}

pub fn s_hermitian(p: &Params, alg: Alg, _rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    for n in [2 * p.r, 2 * p.n + 1] {
        let s = s_mat(alg, n)?;
        ck.eq(&format!("ᵗθ(S_{n})"), &s.theta_t(), &s);
    }
    Ok(())
}

pub fn q_change(p: &Params, alg: Alg, _rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let (n, r) = (p.n, p.r);
    let q = q_mat(alg, n, r)?;
    ck.eq("Q·Q⁻¹", &q.mul(&q.inverse()?), &id(alg, 2 * r));
    let mut e = Mat::zeros(alg, 2 * r, 1);
    e.set(n, 0, alg.one());
    e.set(2 * r - n - 1, 0, alg.one());
    let mut en = Mat::zeros(alg, 2 * r, 1);
    en.set(n, 0, alg.one());
    ck.eq("Q·e_{n+1}", &q.mul(&en), &e);
    Ok(())
}

pub fn i_prime_square(p: &Params, alg: Alg, _rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let i = crate::structures::i_prime(alg, p.r)?;
    ck.eq("I′·I′", &i.mul(&i), &id(alg, p.r));
    Ok(())
}

fn embedding_homomorphism(kind: Embedding, p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let (n, r) = (p.n, p.r);
    let src = match kind {
        Embedding::Lower => 2 * r,
        Embedding::Upper => 2 * n + 1,
    };
    let g = random_unitary(alg, src, rng);
    let h = random_unitary(alg, src, rng);
    let jg = embed(kind, n, r, &g)?;
    let jh = embed(kind, n, r, &h)?;
    ck.eq("j(gh)", &embed(kind, n, r, &g.mul(&h))?, &jg.mul(&jh));
    ck.holds("j(g) is unitary", is_unitary(&jg));
    ck.eq("j(I)", &embed(kind, n, r, &id(alg, src))?, &id(alg, jg.rows()));
    let bad = Mat::random_invertible(alg, src, rng);
    if !is_unitary(&bad) {
        ck.holds("a non-unitary input is rejected", matches!(embed(kind, n, r, &bad), Err(GroupError::NotInSourceGroup(_))));
    }
    if kind == Embedding::Upper {
        let mut e = Mat::zeros(alg, 2 * r, 1);
        e.set(n, 0, alg.one());
        e.set(2 * r - n - 1, 0, alg.one());
        ck.eq("j^{n,r}(g)·e", &jg.mul(&e), &e);
    }
    Ok(())
}

pub fn j_lower_homomorphism(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    embedding_homomorphism(Embedding::Lower, p, alg, rng, ck)
}

pub fn j_upper_homomorphism(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    embedding_homomorphism(Embedding::Upper, p, alg, rng, ck)
}

fn unitary_subgroup(kind: SubgroupKind, p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let sub = Subgroup::new(kind, p.n, p.r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let a = sub.random_unitary(alg, rng);
    let b = sub.random_unitary(alg, rng);
    ck.holds("first element lies in the group", sub.contains_unitary(&a));
    ck.holds("second element lies in the group", sub.contains_unitary(&b));
    let ab = a.mul(&b);
    ck.holds("the product lies in the group", sub.contains_unitary(&ab));
    let sum: Vec<K> = sub.character(&a, true).iter().zip(sub.character(&b, true)).map(|(x, y)| x.add(&y)).collect();
    ck.eq_k("character of the product", &sub.character(&ab, true), &sum);
    Ok(())
}

pub fn xbar_upper_group(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    unitary_subgroup(SubgroupKind::XbarUpper, p, alg, rng, ck)
}

pub fn xbar_lower_group(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    unitary_subgroup(SubgroupKind::XbarLower, p, alg, rng, ck)
}

// ---------------------------------------------------------------------------
// Y_{n,r} and Y^{n,r}

fn y_stability(kind: SubgroupKind, p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let (n, r) = (p.n, p.r);
    let sub = Subgroup::new(kind, n, r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let (emb, src) = match kind {
        SubgroupKind::YLower => (Embedding::Lower, 2 * r),
        _ => (Embedding::Upper, 2 * n + 1),
    };
    let y = sub.random_unitary(alg, rng);
    let y2 = sub.random_unitary(alg, rng);
    ck.holds("y lies in the group", sub.contains_unitary(&y));
    ck.holds("the group is closed under products", sub.contains_unitary(&y.mul(&y2)));
    let h = random_unitary(alg, src, rng);
    let jh = embed(emb, n, r, &h)?;
    let moved = jh.mul(&y).mul(&jh.inverse()?);
    ck.holds("j(h)·y·j(h)⁻¹ lies in the group", sub.contains_unitary(&moved));
    ck.eq_k("character after conjugation", &sub.character(&moved, true), &sub.character(&y, true));
    Ok(())
}

pub fn y_lower_stable(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    y_stability(SubgroupKind::YLower, p, alg, rng, ck)
}

pub fn y_upper_stable(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    y_stability(SubgroupKind::YUpper, p, alg, rng, ck)
}

// ---------------------------------------------------------------------------
// the reduction for n < r with the parabolic of type (k, 2(n − k) + 1, k)

struct Parabolic {
    k: usize,
    n0: usize,
    l: usize,
}

impl Parabolic {
    fn new(p: &Params) -> Result<Self> {
        let k = p.need_k()?;
        let l = p.l().ok_or_else(|| GroupError::BadSize("needs n < r".into()))?;
        if k == 0 || k > p.n {
            return Err(GroupError::BadSize(format!("k = {k} outside 1..=n")));
        }
        Ok(Self { k, n0: p.n - k, l })
    }

    /// p̄ = [[a], [x, I], [0, 0, 1], [0, 0, 0, I], [0, 0, 0, y, b]].
    fn pbar(&self, alg: Alg, a: &Mat, x: &Mat, y: &Mat, b: &Mat) -> Mat {
        let (k, n0) = (self.k, self.n0);
        Mat::unipotent(alg, &[k, n0, 1, n0, k], &[(0, 0, a), (1, 0, x), (4, 3, y), (4, 4, b)])
    }

    /// ẋ = [[0, I_{n0+1}, 0], [0, 0, I_ℓ], [I_k, 0, x]].
    fn xdot(&self, alg: Alg, x: &Mat) -> Mat {
        let (k, n0, l) = (self.k, self.n0, self.l);
        Mat::blocks(
            alg,
            &[n0 + 1, l, k],
            &[k, n0 + 1, l],
            &[(0, 1, &id(alg, n0 + 1)), (1, 2, &id(alg, l)), (2, 0, &id(alg, k)), (2, 2, x)],
        )
    }

    /// ÿ = [[0, 0, I_k], [I_ℓ, 0, y], [0, I_{n0+1}, 0]].
    fn yddot(&self, alg: Alg, y: &Mat) -> Mat {
        let (k, n0, l) = (self.k, self.n0, self.l);
        Mat::blocks(
            alg,
            &[k, l, n0 + 1],
            &[l, n0 + 1, k],
            &[(0, 2, &id(alg, k)), (1, 0, &id(alg, l)), (1, 2, y), (2, 1, &id(alg, n0 + 1))],
        )
    }
}

/// The lower unipotent u′ of the parabolic and the blocks of j^{n,r}(u′).
struct Lwk {
    d1: Mat,
    d2: Mat,
    e: Mat,
    f1: Mat,
    f2: Mat,
    u: Mat,
}

impl Lwk {
    fn random(pb: &Parabolic, alg: Alg, rng: &mut ChaCha8Rng) -> Self {
        let (k, n0) = (pb.k, pb.n0);
        let d1 = rnd(alg, 1, k, rng);
        let d2 = rnd(alg, n0, k, rng);
        let e = rnd(alg, k, k, rng);
        let f2 = rnd(alg, k, n0, rng);
        let f1 = rnd(alg, k, 1, rng);
        let u = Mat::unipotent(alg, &[k, n0, 1, n0, k], &[(2, 0, &d1), (3, 0, &d2), (4, 0, &e), (4, 1, &f2), (4, 2, &f1)]);
        Self { d1, d2, e, f1, f2, u }
    }

    fn l_block(&self, pb: &Parabolic, alg: Alg) -> Mat {
        Mat::unipotent(alg, &[pb.k, pb.n0, 1], &[(2, 0, &self.d1)])
    }

    fn w_block(&self, pb: &Parabolic, alg: Alg) -> Mat {
        Mat::unipotent(alg, &[1, pb.n0, pb.k], &[(2, 0, &self.f1.scale_q(&-half()))])
    }

    fn k_block(&self, pb: &Parabolic, alg: Alg) -> Mat {
        Mat::blocks(
            alg,
            &[1, pb.n0, pb.k],
            &[pb.k, pb.n0, 1],
            &[(0, 0, &self.d1.neg()), (1, 0, &self.d2), (2, 0, &self.e), (2, 1, &self.f2), (2, 2, &self.f1.scale_q(&half()))],
        )
    }

    /// e′ = e − ½ f₁ d₁.
    fn e_prime(&self) -> Mat {
        self.e.sub(&self.f1.mul(&self.d1).scale_q(&half()))
    }

    fn z_block(&self, pb: &Parabolic, alg: Alg) -> Mat {
        Mat::blocks(
            alg,
            &[1, pb.n0, pb.k],
            &[pb.k, pb.n0, 1],
            &[(0, 0, &self.d1.neg()), (1, 0, &self.d2), (2, 0, &self.e_prime()), (2, 1, &self.f2), (2, 2, &self.f1.scale_q(&half()))],
        )
    }

    /// Z♭ = [[0, 0], [Z, 0]] in GL_r, Z in the lower left (n+1)×(n+1) corner.
    fn z_flat(&self, pb: &Parabolic, alg: Alg, n: usize) -> Mat {
        Mat::blocks(alg, &[pb.l, n + 1], &[n + 1, pb.l], &[(1, 0, &self.z_block(pb, alg))])
    }

    /// diag(L^△, W^▽) = diag(L, I_ℓ, I_ℓ, W).
    fn levi(&self, pb: &Parabolic, alg: Alg) -> Mat {
        Mat::block_diag(&[&self.l_block(pb, alg), &id(alg, 2 * pb.l), &self.w_block(pb, alg)])
    }
}

fn xbar_upper_blocks(u: &Mat, n: usize, r: usize) -> (Mat, Mat, Mat) {
    let l = r - n - 1;
    let d = u.submatrix(r, 0, r, r);
    let rows = [l, n + 1];
    let cols = [n + 1, l];
    (d.block(&rows, &cols, 0, 0), d.block(&rows, &cols, 0, 1), d.block(&rows, &cols, 1, 1))
}

fn xbar_upper_from(alg: Alg, n: usize, r: usize, a: &Mat, b: &Mat, c: &Mat) -> Mat {
    let l = r - n - 1;
    Mat::lower_unipotent(&Mat::blocks(alg, &[l, n + 1], &[n + 1, l], &[(0, 0, a), (0, 1, b), (1, 1, c)]))
}

pub fn pbar_conjugation(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let (k, n0) = (pb.k, pb.n0);
    let pbar = pb.pbar(alg, &Mat::random_invertible(alg, k, rng), &rnd(alg, n0, k, rng), &rnd(alg, k, n0, rng), &Mat::random_invertible(alg, k, rng));
    let u = sub.random_gl(alg, rng);
    let moved = conj(&j_upper(p.n, p.r, &pbar)?, &u)?;
    ck.holds("j(p̄)⁻¹·ū·j(p̄) lies in X̄^{n,r}", sub.contains_gl(&moved));
    ck.eq_k("ψ_X̄ after conjugation", &sub.character(&moved, false), &sub.character(&u, false));
    Ok(())
}

pub fn pbar_levi(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let (k, n0, l) = (pb.k, pb.n0, pb.l);
    let a = Mat::random_invertible(alg, k, rng);
    let b = Mat::random_invertible(alg, k, rng);
    let x = rnd(alg, n0, k, rng);
    let y = rnd(alg, k, n0, rng);
    let m1 = Mat::unipotent(alg, &[k, n0, l + 1], &[(0, 0, &a), (1, 0, &x)]);
    let m2 = Mat::unipotent(alg, &[l + 1, n0, k], &[(2, 1, &y), (2, 2, &b)]);
    ck.eq("j^{n,r}(p̄)", &j_upper(p.n, p.r, &pb.pbar(alg, &a, &x, &y, &b))?, &Mat::block_diag(&[&m1, &m2]));
    Ok(())
}

pub fn c_conjugation(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let (k, r) = (pb.k, p.r);
    let a = Mat::random_invertible(alg, k, rng);
    let b = Mat::random_invertible(alg, k, rng);
    let c = Mat::block_diag(&[&a, &id(alg, r - k), &id(alg, r - k), &b]);
    let u = sub.random_gl(alg, rng);
    let moved = c.mul(&u).mul(&c.inverse()?);
    ck.holds("c·ū·c⁻¹ lies in X̄^{n,r}", sub.contains_gl(&moved));
    ck.eq_k("ψ_X̄ after conjugation", &sub.character(&moved, false), &sub.character(&u, false));
    Ok(())
}

pub fn block_shapes(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let (k, n0, l, r) = (pb.k, pb.n0, pb.l, p.r);
    let b = Mat::random_invertible(alg, k, rng);
    let a = Mat::random_invertible(alg, k, rng);

    let yp = rnd(alg, k, n0, rng);
    let lhs = Mat::unipotent(alg, &[l + 1, n0, k], &[(2, 1, &yp), (2, 2, &b)]);
    let left = Mat::blocks(alg, &[l + 1, n0, k], &[k, l + 1, n0], &[(0, 1, &id(alg, l + 1)), (1, 2, &id(alg, n0)), (2, 0, &b), (2, 2, &yp)]);
    let right = Mat::blocks(alg, &[k, l + 1, n0], &[l + 1, n0, k], &[(0, 2, &id(alg, k)), (1, 0, &id(alg, l + 1)), (2, 1, &id(alg, n0))]);
    ck.eq("Levi block of p̄ as a product with a permutation", &lhs, &left.mul(&right));

    let y = rnd(alg, l, k, rng);
    let lhs = Mat::unipotent(alg, &[k, l, n0 + 1], &[(0, 0, &b), (1, 0, &y)]);
    let perm = Mat::blocks(alg, &[k, l, n0 + 1], &[l, n0 + 1, k], &[(0, 2, &id(alg, k)), (1, 0, &id(alg, l)), (2, 1, &id(alg, n0 + 1))]);
    let rhs = Mat::blocks(alg, &[k, l, n0 + 1], &[l, n0 + 1, k], &[(0, 2, &b), (1, 0, &id(alg, l)), (1, 2, &y), (2, 1, &id(alg, n0 + 1))]);
    ck.eq("[[b],[y, I]]·permutation", &lhs.mul(&perm), &rhs);

    let x = rnd(alg, k, l, rng);
    let a_hat = Mat::block_diag(&[&a, &id(alg, r - k)]);
    let lhs = Mat::blocks(alg, &[n0 + 1, l, k], &[k, n0 + 1, l], &[(0, 1, &id(alg, n0 + 1)), (1, 2, &id(alg, l)), (2, 0, &a), (2, 2, &x)]);
    ck.eq("ẋ·â", &pb.xdot(alg, &x).mul(&a_hat), &lhs);

    let b_check = Mat::block_diag(&[&id(alg, r - k), &b]);
    let rhs = Mat::blocks(alg, &[k, l, n0 + 1], &[l, n0 + 1, k], &[(0, 2, &b), (1, 0, &id(alg, l)), (1, 2, &y.mul(&b)), (2, 1, &id(alg, n0 + 1))]);
    ck.eq("ÿ·b̌", &pb.yddot(alg, &y).mul(&b_check), &rhs);
    Ok(())
}

pub fn lwk_blocks(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let n = p.n;
    let l = pb.l;
    let u = Lwk::random(&pb, alg, rng);
    let ju = j_upper(n, p.r, &u.u)?;
    let (lb, wb, kb) = (u.l_block(&pb, alg), u.w_block(&pb, alg), u.k_block(&pb, alg));
    let sizes = [n + 1, l, l, n + 1];
    ck.eq("j^{n,r}(u′)", &ju, &Mat::unipotent(alg, &sizes, &[(0, 0, &lb), (3, 0, &kb), (3, 3, &wb)]));
    ck.eq("W⁻¹K", &wb.inverse()?.mul(&kb), &u.z_block(&pb, alg));
    let lower = Mat::unipotent(alg, &sizes, &[(3, 0, &u.z_block(&pb, alg))]);
    ck.eq("j^{n,r}(u′) = diag(L, I, I, W)·[[I], [Z, I]]", &ju, &u.levi(&pb, alg).mul(&lower));
    Ok(())
}

pub fn product_form(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let u = Lwk::random(&pb, alg, rng);
    let ju = j_upper(p.n, p.r, &u.u)?;
    let rhs = u.levi(&pb, alg).mul(&Mat::lower_unipotent(&u.z_flat(&pb, alg, p.n)));
    ck.eq("j^{n,r}(u′) = diag(L^△, W^▽)·[[I, 0], [Z^♭, I]]", &ju, &rhs);
    Ok(())
}

pub fn move_past(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let (n, r, l) = (p.n, p.r, pb.l);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, n, r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let ubar = sub.random_gl(alg, rng);
    let (a, b, c) = xbar_upper_blocks(&ubar, n, r);
    let u = Lwk::random(&pb, alg, rng);
    let (lb, wb) = (u.l_block(&pb, alg), u.w_block(&pb, alg));
    let al = a.mul(&lb);
    let wc = wb.inverse()?.mul(&c);
    let dprime = xbar_upper_from(alg, n, r, &al, &b, &wc);
    let rhs = Mat::prod(&[&u.levi(&pb, alg), &dprime, &Mat::lower_unipotent(&u.z_flat(&pb, alg, n))]);
    ck.eq("ū·j^{n,r}(u′)", &ubar.mul(&j_upper(n, r, &u.u)?), &rhs);
    if l > 0 {
        ck.eq_k("(AL)_{ℓ,n+1}", &[al.get(l - 1, n).clone()], &[a.get(l - 1, n).clone()]);
        ck.eq_k("(W⁻¹C)_{11}", &[wc.get(0, 0).clone()], &[c.get(0, 0).clone()]);
    }
    Ok(())
}

pub fn levi_conjugates(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let (k, n0, l) = (pb.k, pb.n0, pb.l);
    let u = Lwk::random(&pb, alg, rng);
    let x = rnd(alg, k, l, rng);
    let y = rnd(alg, l, k, rng);
    let xd = pb.xdot(alg, &x);
    let yd = pb.yddot(alg, &y);
    let l_tri = Mat::block_diag(&[&u.l_block(&pb, alg), &id(alg, l)]);
    let w_tri = Mat::block_diag(&[&id(alg, l), &u.w_block(&pb, alg)]);
    let d = Mat::blocks(alg, &[n0, 1], &[k], &[(1, 0, &u.d1)]);
    let f = Mat::blocks(alg, &[k], &[1, n0], &[(0, 0, &u.f1.scale_q(&-half()))]);
    let want_l = Mat::unipotent(alg, &[n0 + 1, l, k], &[(0, 1, &d.mul(&x).neg()), (0, 2, &d)]);
    let want_w = Mat::unipotent(alg, &[k, l, n0 + 1], &[(0, 2, &f), (1, 2, &y.mul(&f))]);
    ck.eq("ẋ·L^△·ẋ⁻¹", &xd.mul(&l_tri).mul(&xd.inverse()?), &want_l);
    ck.eq("ÿ·W^▽·ÿ⁻¹", &yd.mul(&w_tri).mul(&yd.inverse()?), &want_w);
    Ok(())
}

pub fn h_formula(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let (n, r, k, n0, l) = (p.n, p.r, pb.k, pb.n0, pb.l);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, n, r)?;
    let sub0 = Subgroup::new(SubgroupKind::XbarUpper, n0, r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let ubar = sub.random_gl(alg, rng);
    let dm = ubar.submatrix(r, 0, r, r);
    let (rows, cols) = ([l, n0 + 1, k], [k, n0 + 1, l]);
    let a1 = dm.block(&rows, &cols, 0, 0);
    let a = dm.block(&rows, &cols, 0, 1);
    let b = dm.block(&rows, &cols, 0, 2);
    let c = dm.block(&rows, &cols, 1, 2);
    let c1 = dm.block(&rows, &cols, 2, 2);
    let u = Lwk::random(&pb, alg, rng);
    let x = rnd(alg, k, l, rng);
    let y = rnd(alg, l, k, rng);
    let xd = pb.xdot(alg, &x);
    let xdi = xd.inverse()?;
    let yd = pb.yddot(alg, &y);
    let (hr, hc) = ([k, l, n0 + 1], [n0 + 1, l, k]);

    let b2 = b.sub(&a1.mul(&x)).add(&y.mul(&c1));
    let want_d = Mat::blocks(alg, &hr, &hc, &[(0, 1, &c1), (1, 0, &a), (1, 1, &b2), (1, 2, &a1), (2, 1, &c)]);
    ck.eq("ÿ·D·ẋ⁻¹", &yd.mul(&dm).mul(&xdi), &want_d);

    let e1 = u.e_prime();
    let f1 = Mat::blocks(alg, &[k], &[n0, 1], &[(0, 0, &u.f2), (0, 1, &u.f1.scale_q(&half()))]);
    let d1 = Mat::blocks(alg, &[1, n0], &[k], &[(0, 0, &u.d1.neg()), (1, 0, &u.d2)]);
    let want_z = Mat::blocks(
        alg,
        &hr,
        &hc,
        &[
            (0, 0, &f1),
            (0, 1, &e1.mul(&x).neg()),
            (0, 2, &e1),
            (1, 0, &y.mul(&f1)),
            (1, 1, &Mat::prod(&[&y, &e1, &x]).neg()),
            (1, 2, &y.mul(&e1)),
            (2, 1, &d1.mul(&x).neg()),
            (2, 2, &d1),
        ],
    );
    let zf = u.z_flat(&pb, alg, n);
    ck.eq("ÿ·Z^♭·ẋ⁻¹", &yd.mul(&zf).mul(&xdi), &want_z);

    let h = want_d.add(&want_z);
    let m = Mat::block_diag(&[&xd, &yd]);
    let moved = Mat::prod(&[&m, &ubar, &Mat::lower_unipotent(&zf), &m.inverse()?]);
    ck.eq("diag(ẋ, ÿ)·ū·[[I], [Z^♭, I]]·diag(ẋ, ÿ)⁻¹", &moved, &Mat::lower_unipotent(&h));
    ck.holds("the result lies in X̄^{n−k,r}", sub0.contains_gl(&moved));
    if l > 0 {
        let shift = scalar(&row(&y, l - 1).mul(&u.f1)).scale(&half()).sub(&scalar(&u.d1.mul(&col(&x, 0))));
        let want = total(alg, &sub.character(&ubar, false)).add(&shift);
        ck.eq_k("ψ_{X̄^{n−k,r}} after the change of variables", &sub0.character(&moved, false), &[want]);
    }
    Ok(())
}

pub fn final_commutation(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let pb = Parabolic::new(p)?;
    let (k, n0, l) = (pb.k, pb.n0, pb.l);
    let x = rnd(alg, k, l, rng);
    let y = rnd(alg, l, k, rng);
    let m = Mat::block_diag(&[&pb.xdot(alg, &x), &pb.yddot(alg, &y)]);
    let g0 = Mat::random_invertible(alg, 2 * n0 + 1, rng);
    let g = Mat::block_diag(&[&id(alg, k), &g0, &id(alg, k)]);
    ck.eq("diag(ẋ, ÿ)·j^{n,r}(diag(I, g₀, I))", &m.mul(&j_upper(p.n, p.r, &g)?), &j_upper(n0, p.r, &g0)?.mul(&m));
    Ok(())
}

// ---------------------------------------------------------------------------
// switching r to r″ when n < r″

struct SmallSwitch {
    r1: usize,
    r2: usize,
}

impl SmallSwitch {
    fn new(p: &Params) -> Result<Self> {
        let (r1, r2) = p.need_split()?;
        if r1 + r2 != p.r || p.n >= r2 {
            return Err(GroupError::BadSize("needs r′ + r″ = r and n < r″".into()));
        }
        Ok(Self { r1, r2 })
    }

    /// (A, B, D′, C) for D = [[A, B], [D′, C]].
    fn parts(&self, ubar: &Mat, r: usize) -> [Mat; 4] {
        let d = ubar.submatrix(r, 0, r, r);
        let (rows, cols) = ([self.r1, self.r2], [self.r2, self.r1]);
        [d.block(&rows, &cols, 0, 0), d.block(&rows, &cols, 0, 1), d.block(&rows, &cols, 1, 0), d.block(&rows, &cols, 1, 1)]
    }
}

pub fn switch_w_xbar(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let sw = SmallSwitch::new(p)?;
    let (r1, r2) = (sw.r1, sw.r2);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?;
    let sub2 = Subgroup::new(SubgroupKind::XbarUpper, p.n, r2)?;
    let ubar = sub.random_gl(alg, rng);
    let [a, b, d2, c] = sw.parts(&ubar, p.r);
    let w = w_switch(alg, r1, r2);
    let sizes = [r1, r2, r2, r1];
    let got = conj(&w, &ubar)?;
    ck.eq("w⁻¹·ū·w", &got, &Mat::unipotent(alg, &sizes, &[(2, 0, &c), (2, 1, &d2), (3, 0, &b), (3, 1, &a)]));
    let inner = Mat::lower_unipotent(&d2);
    ck.holds("the middle block lies in X̄^{n,r″}", sub2.contains_gl(&inner));
    let rest = Mat::unipotent(alg, &sizes, &[(2, 0, &c), (3, 0, &b), (3, 1, &a)]);
    ck.eq("w⁻¹·ū·w = diag(I, ū′, I)·n̄", &got, &Mat::block_diag(&[&id(alg, r1), &inner, &id(alg, r1)]).mul(&rest));
    Ok(())
}

pub fn switch_w_u(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let sw = SmallSwitch::new(p)?;
    let (r1, r2) = (sw.r1, sw.r2);
    let x = rnd(alg, r2, r1, rng);
    let y = rnd(alg, r1, r2, rng);
    let u = Mat::unipotent(alg, &[r2, r1, r1, r2], &[(0, 1, &x), (2, 3, &y)]);
    let w = w_switch(alg, r1, r2);
    ck.eq("w⁻¹·u·w", &conj(&w, &u)?, &Mat::unipotent(alg, &[r1, r2, r2, r1], &[(1, 0, &x), (3, 2, &y)]));
    Ok(())
}

pub fn switch_nbar(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let sw = SmallSwitch::new(p)?;
    let (n, r, r1, r2) = (p.n, p.r, sw.r1, sw.r2);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, n, r)?;
    let sub2 = Subgroup::new(SubgroupKind::XbarUpper, n, r2)?;
    let ubar = sub.random_gl(alg, rng);
    let [a, b, d2, c] = sw.parts(&ubar, r);
    let x = rnd(alg, r2, r1, rng);
    let y = rnd(alg, r1, r2, rng);
    let u = Mat::unipotent(alg, &[r2, r1, r1, r2], &[(0, 1, &x), (2, 3, &y)]);
    let w = w_switch(alg, r1, r2);
    let inner = Mat::lower_unipotent(&d2);
    let b2 = b.add(&a.mul(&x));
    let nbar = Mat::unipotent(alg, &[r1, r2, r2, r1], &[(1, 0, &x), (2, 0, &c), (3, 0, &b2), (3, 1, &a), (3, 2, &y)]);
    ck.eq("w⁻¹·ū·u·w", &conj(&w, &ubar.mul(&u))?, &Mat::block_diag(&[&id(alg, r1), &inner, &id(alg, r1)]).mul(&nbar));

    let psi_u = x.get(r2 - 1, 0).neg().add(y.get(r1 - 1, 0));
    let lhs = total(alg, &sub.character(&ubar, false)).add(&psi_u);
    let l2 = r2 - n - 1;
    let mut psi_n = nbar.get(r1 + r2 - 1, 0).neg().add(nbar.get(2 * r - 1, r1 + r2));
    if l2 == 0 {
        psi_n = psi_n.add(&a.get(r1 - 1, r2 - 1).sub(c.get(0, 0)));
    }
    let rhs = total(alg, &sub2.character(&inner, false)).add(&psi_n);
    ck.eq_k("ψ_X̄(ū)·ψ_N̂(u) against ψ_X̄(ū′)·ψ_{N_P̄}(n̄)", &[lhs], &[rhs]);
    Ok(())
}

pub fn switch_u_conjugation(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let sw = SmallSwitch::new(p)?;
    let (r1, r2) = (sw.r1, sw.r2);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, p.n, p.r)?;
    let ubar = sub.random_gl(alg, rng);
    let u = Mat::unipotent(alg, &[r2, r1, r1, r2], &[(0, 1, &rnd(alg, r2, r1, rng)), (2, 3, &rnd(alg, r1, r2, rng))]);
    let moved = u.mul(&ubar).mul(&u.inverse()?);
    ck.holds("u·ū·u⁻¹ lies in X̄^{n,r}", sub.contains_gl(&moved));
    ck.eq_k("ψ_X̄ after conjugation", &sub.character(&moved, false), &sub.character(&ubar, false));
    Ok(())
}

pub fn switch_w_embedding(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let sw = SmallSwitch::new(p)?;
    let g = Mat::random_invertible(alg, 2 * p.n + 1, rng);
    let w = w_switch(alg, sw.r1, sw.r2);
    let jg = j_upper(p.n, p.r, &g)?;
    let want = Mat::block_diag(&[&id(alg, sw.r1), &j_upper(p.n, sw.r2, &g)?, &id(alg, sw.r1)]);
    ck.eq("w⁻¹·j^{n,r}(g)·w", &conj(&w, &jg)?, &want);
    Ok(())
}

// ---------------------------------------------------------------------------
// switching r to r″ when r″ ≤ n < r

struct MidSwitch {
    n: usize,
    r: usize,
    r1: usize,
    r2: usize,
    n2: usize,
    l: usize,
}

/// The blocks of ū ∈ X̄^{n,r} in the partition (r″, n″+1, ℓ, ℓ, n″+1, r″).
struct MidBar {
    a1: Mat,
    a2: Mat,
    b: Mat,
    c2: Mat,
    c1: Mat,
}

/// Random entries x″, x′, y′, y″ of u = u′u″ ∈ N̂.
struct MidU {
    x2: Mat,
    x1: Mat,
    y1: Mat,
    y2: Mat,
}

impl MidSwitch {
    fn new(p: &Params) -> Result<Self> {
        let (r1, r2) = p.need_split()?;
        if r1 + r2 != p.r || !(r2 <= p.n && p.n < p.r) {
            return Err(GroupError::BadSize("needs r′ + r″ = r and r″ ≤ n < r".into()));
        }
        Ok(Self { n: p.n, r: p.r, r1, r2, n2: p.n - r2, l: p.r - p.n - 1 })
    }

    fn s6(&self) -> [usize; 6] {
        [self.r2, self.n2 + 1, self.l, self.l, self.n2 + 1, self.r2]
    }

    /// The partition (n″, 1, ℓ, r″, r″, ℓ, 1, n″) seen after conjugating by w.
    fn t8(&self) -> [usize; 8] {
        [self.n2, 1, self.l, self.r2, self.r2, self.l, 1, self.n2]
    }

    /// The partition (n″+1, ℓ, r″, r″, ℓ, n″+1) of Ȳ.
    fn y6(&self) -> [usize; 6] {
        [self.n2 + 1, self.l, self.r2, self.r2, self.l, self.n2 + 1]
    }

    fn w(&self, alg: Alg) -> Mat {
        w_switch(alg, self.r1, self.r2)
    }

    fn bar(&self, u: &Mat) -> MidBar {
        let s = self.s6();
        MidBar { a1: u.block(&s, &s, 3, 0), a2: u.block(&s, &s, 3, 1), b: u.block(&s, &s, 3, 2), c2: u.block(&s, &s, 4, 2), c1: u.block(&s, &s, 5, 2) }
    }

    fn from_bar(&self, alg: Alg, m: &MidBar) -> Mat {
        Mat::unipotent(alg, &self.s6(), &[(3, 0, &m.a1), (3, 1, &m.a2), (3, 2, &m.b), (4, 2, &m.c2), (5, 2, &m.c1)])
    }

    fn random_u(&self, alg: Alg, rng: &mut ChaCha8Rng) -> MidU {
        MidU {
            x2: rnd(alg, self.r2, self.n2 + 1, rng),
            x1: rnd(alg, self.r2, self.l, rng),
            y1: rnd(alg, self.l, self.r2, rng),
            y2: rnd(alg, self.n2 + 1, self.r2, rng),
        }
    }

    /// u″ with x″ and y″.
    fn u2(&self, alg: Alg, u: &MidU) -> Mat {
        Mat::unipotent(alg, &self.s6(), &[(0, 1, &u.x2), (4, 5, &u.y2)])
    }

    /// u′ with x′ and y′.
    fn u1(&self, alg: Alg, u: &MidU) -> Mat {
        Mat::unipotent(alg, &self.s6(), &[(0, 2, &u.x1), (3, 5, &u.y1)])
    }

    /// x″ = (x″₁ x″₂) with x″₂ the last column; y″ = (y″₁; y″₂) with y″₁ the first row.
    fn split_u2(&self, u: &MidU) -> (Mat, Mat, Mat, Mat) {
        let n2 = self.n2;
        let x21 = u.x2.submatrix(0, 0, self.r2, n2);
        let x22 = col(&u.x2, n2);
        let y21 = row(&u.y2, 0);
        let y22 = u.y2.submatrix(1, 0, n2, self.r2);
        (x21, x22, y21, y22)
    }

    /// Z with j^{n,r}(z) = [[I, Z], [0, I]]·u″.
    fn z_block(&self, alg: Alg, u: &MidU) -> Mat {
        let (_, x22, y21, _) = self.split_u2(u);
        Mat::blocks(
            alg,
            &[self.r2, self.n2, 1, self.l],
            &[self.l, 1, self.n2, self.r2],
            &[(0, 1, &x22.neg()), (0, 3, &x22.mul(&y21)), (2, 3, &y21.neg())],
        )
    }

    fn z_elem(&self, alg: Alg, u: &MidU) -> Mat {
        let (x21, x22, y21, y22) = self.split_u2(u);
        let two = crate::scalar::q(2);
        Mat::unipotent(
            alg,
            &[self.r2, self.n2, 1, self.n2, self.r2],
            &[(0, 1, &x21), (0, 2, &x22.scale_q(&two)), (2, 4, &y21.neg()), (3, 4, &y22)],
        )
    }

    /// c″ = −y″₁C′ and a″ = A′x″₂, the pieces of b″.
    fn b2_parts(&self, m: &MidBar, u: &MidU) -> (Mat, Mat) {
        let (_, x22, y21, _) = self.split_u2(u);
        (y21.mul(&m.c1).neg(), m.a1.mul(&x22))
    }

    fn b2(&self, alg: Alg, m: &MidBar, u: &MidU) -> Mat {
        let (c2, a2) = self.b2_parts(m, u);
        let s8 = [self.r2, self.n2, 1, self.l, self.l, 1, self.n2, self.r2];
        Mat::unipotent(alg, &s8, &[(2, 3, &c2), (4, 5, &a2)])
    }
}

pub fn mid_u_factor(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let u = ms.random_u(alg, rng);
    let whole = Mat::unipotent(alg, &ms.s6(), &[(0, 1, &u.x2), (0, 2, &u.x1), (3, 5, &u.y1), (4, 5, &u.y2)]);
    ck.eq("u = u′·u″", &ms.u1(alg, &u).mul(&ms.u2(alg, &u)), &whole);
    Ok(())
}

pub fn mid_u2_conjugation(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarUpper, ms.n, ms.r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let ubar = sub.random_gl(alg, rng);
    let m = ms.bar(&ubar);
    let u = ms.random_u(alg, rng);
    let u2 = ms.u2(alg, &u);
    let moved = u2.mul(&ubar).mul(&u2.inverse()?);
    let want = MidBar { a2: m.a2.sub(&m.a1.mul(&u.x2)), c2: m.c2.add(&u.y2.mul(&m.c1)), ..ms.bar(&ubar) };
    ck.eq("u″·ū·u″⁻¹", &moved, &ms.from_bar(alg, &want));
    ck.holds("u″·ū·u″⁻¹ lies in X̄^{n,r}", sub.contains_gl(&moved));
    if ms.l > 0 {
        let (_, x22, _, _) = ms.split_u2(&u);
        let shift = scalar(&row(&m.a1, ms.l - 1).mul(&x22)).add(&scalar(&row(&u.y2, 0).mul(&col(&m.c1, 0))));
        let want = total(alg, &sub.character(&moved, false)).add(&shift);
        ck.eq_k("ψ_X̄(ū) = ψ_X̄(ū′)·ψ(A′₂x″₂ + y″₁C′₁)", &sub.character(&ubar, false), &[want]);
    }
    Ok(())
}

pub fn mid_z_embedding(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let u = ms.random_u(alg, rng);
    let z = ms.z_elem(alg, &u);
    let zb = ms.z_block(alg, &u);
    let u2 = ms.u2(alg, &u);
    ck.holds("z is upper unipotent", z.is_upper_unipotent());
    ck.eq("j^{n,r}(z) = [[I, Z], [0, I]]·u″", &j_upper(ms.n, ms.r, &z)?, &Mat::upper_unipotent(&zb).mul(&u2));
    let g = Mat::random_invertible(alg, 2 * ms.n + 1, rng);
    let rhs = Mat::upper_unipotent(&zb.neg()).mul(&j_upper(ms.n, ms.r, &z.mul(&g))?);
    ck.eq("u″·j^{n,r}(g) = [[I, −Z], [0, I]]·j^{n,r}(zg)", &u2.mul(&j_upper(ms.n, ms.r, &g)?), &rhs);
    Ok(())
}

pub fn mid_b_factor(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let (n, r, l, r2, n2) = (ms.n, ms.r, ms.l, ms.r2, ms.n2);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, n, r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let ubar = sub.random_gl(alg, rng);
    let m = ms.bar(&ubar);
    let u = ms.random_u(alg, rng);
    let (_, x22, y21, _) = ms.split_u2(&u);
    let zb = ms.z_block(alg, &u);
    let conj_z = Mat::prod(&[&Mat::upper_unipotent(&zb), &ubar, &Mat::upper_unipotent(&zb.neg())]);

    let a = Mat::blocks(alg, &[l], &[r2, n2 + 1], &[(0, 0, &m.a1), (0, 1, &m.a2)]);
    let c = Mat::blocks(alg, &[n2 + 1, r2], &[l], &[(0, 0, &m.c2), (1, 0, &m.c1)]);
    let mz = Mat::blocks(alg, &[r2, n2, 1], &[1, n2, r2], &[(0, 0, &x22.neg()), (0, 2, &x22.mul(&y21)), (2, 2, &y21.neg())]);
    let b_new = m.b.add(&Mat::prod(&[&a, &mz, &c]));
    let ubar2 = xbar_upper_from(alg, n, r, &a, &b_new, &c);

    let c21 = row(&m.c2, 0);
    let a22 = col(&m.a2, n2);
    let c_top = x22.mul(&y21).mul(&m.c1).sub(&x22.mul(&c21));
    let a_top = a22.mul(&y21).sub(&Mat::prod(&[&m.a1, &x22, &y21]));
    let (c_low, a_low) = ms.b2_parts(&m, &u);
    let s8 = [r2, n2, 1, l, l, 1, n2, r2];
    let b1 = Mat::unipotent(alg, &s8, &[(0, 3, &c_top), (4, 7, &a_top)]);
    let b2 = ms.b2(alg, &m, &u);
    let cc = Mat::blocks(alg, &[r2, n2, 1], &[l], &[(0, 0, &c_top), (2, 0, &c_low)]);
    let aa = Mat::blocks(alg, &[l], &[1, n2, r2], &[(0, 0, &a_low), (0, 2, &a_top)]);
    let b = Mat::unipotent(alg, &[n + 1, l, l, n + 1], &[(0, 1, &cc), (2, 3, &aa)]);
    ck.eq("[[I, Z], [0, I]]·ū·[[I, −Z], [0, I]] = b·ū″", &conj_z, &b.mul(&ubar2));
    ck.eq("b = b′·b″", &b, &b1.mul(&b2));
    ck.holds("ū″ lies in X̄^{n,r}", sub.contains_gl(&ubar2));
    ck.eq_k("ψ_X̄(ū″) = ψ_X̄(ū)", &sub.character(&ubar2, false), &sub.character(&ubar, false));
    Ok(())
}

pub fn mid_commutations(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarUpper, ms.n, ms.r)?;
    let m = ms.bar(&sub.random_gl(alg, rng));
    let u = ms.random_u(alg, rng);
    let u1 = ms.u1(alg, &u);
    let mz = Mat::upper_unipotent(&ms.z_block(alg, &u).neg());
    let b2 = ms.b2(alg, &m, &u);
    ck.eq("u′ commutes with [[I, −Z], [0, I]]", &u1.mul(&mz), &mz.mul(&u1));
    ck.eq("u′ commutes with b″", &u1.mul(&b2), &b2.mul(&u1));
    Ok(())
}

pub fn mid_w_displays(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarUpper, ms.n, ms.r)?;
    let m = ms.bar(&sub.random_gl(alg, rng));
    let u = ms.random_u(alg, rng);
    let (_, x22, y21, _) = ms.split_u2(&u);
    let w = ms.w(alg);
    let t8 = ms.t8();
    let mz = Mat::upper_unipotent(&ms.z_block(alg, &u).neg());
    let want = Mat::unipotent(alg, &t8, &[(1, 4, &y21), (3, 4, &x22.mul(&y21).neg()), (3, 6, &x22)]);
    ck.eq("w⁻¹·[[I, −Z], [0, I]]·w", &conj(&w, &mz)?, &want);
    let (c2, a2) = ms.b2_parts(&m, &u);
    ck.eq("w⁻¹·b″·w", &conj(&w, &ms.b2(alg, &m, &u))?, &Mat::unipotent(alg, &t8, &[(1, 2, &c2), (5, 6, &a2)]));
    Ok(())
}

pub fn mid_xbar_step(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let (n, r, r2, n2, l) = (ms.n, ms.r, ms.r2, ms.n2, ms.l);
    let sub = Subgroup::new(SubgroupKind::XbarUpper, n, r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let x1 = rnd(alg, n2, r2, rng);
    let x2 = rnd(alg, r2, n2, rng);
    let xb = Mat::unipotent(alg, &[r2, n2, 1, n2, r2], &[(1, 0, &x1), (4, 3, &x2)]);
    let big_x1 = Mat::unipotent(alg, &[r2, n2, 1], &[(1, 0, &x1)]);
    let big_x2 = Mat::unipotent(alg, &[1, n2, r2], &[(2, 1, &x2)]);
    let jx = j_upper(n, r, &xb)?;
    ck.eq("j^{n,r}(x̄)", &jx, &Mat::block_diag(&[&big_x1, &id(alg, 2 * l), &big_x2]));

    let ubar = sub.random_gl(alg, rng);
    let (a, b, c) = xbar_upper_blocks(&ubar, n, r);
    let moved = conj(&jx, &ubar)?;
    ck.eq("j(x̄)⁻¹·ū·j(x̄)", &moved, &xbar_upper_from(alg, n, r, &a.mul(&big_x1), &b, &big_x2.inverse()?.mul(&c)));
    ck.eq_k("ψ_X̄ after conjugation", &sub.character(&moved, false), &sub.character(&ubar, false));

    let u = ms.random_u(alg, rng);
    let u1 = ms.u1(alg, &u);
    let z1 = Mat::unipotent(alg, &[r2, n2, 1, l], &[(1, 3, &x1.mul(&u.x1).neg())]);
    let z2 = Mat::unipotent(alg, &[l, 1, n2, r2], &[(0, 2, &u.y1.mul(&x2))]);
    let zz = Mat::block_diag(&[&z1, &z2]);
    ck.eq("j(x̄)⁻¹·u′·j(x̄) = diag(z₁, z₂)·u′", &conj(&jx, &u1)?, &zz.mul(&u1));

    let w = ms.w(alg);
    let t8 = ms.t8();
    ck.eq("w⁻¹·j(x̄)·w", &conj(&w, &jx)?, &Mat::unipotent(alg, &t8, &[(0, 3, &x1), (4, 7, &x2)]));
    let want = Mat::unipotent(alg, &t8, &[(0, 2, &x1.mul(&u.x1).neg()), (5, 7, &u.y1.mul(&x2))]);
    ck.eq("w⁻¹·diag(z₁, z₂)·w", &conj(&w, &zz)?, &want);
    Ok(())
}

fn ybar_pattern(ms: &MidSwitch) -> Pattern {
    use Slot::Full;
    Pattern::new(ms.y6().to_vec(), vec![(2, 1, Full), (3, 1, Full), (4, 0, Full), (4, 1, Full), (4, 2, Full), (4, 3, Full), (5, 1, Full)])
}

/// (A″)_{ℓ,n″+1} − (C″)_{11} read off an element of Ȳ.
fn ybar_character(ms: &MidSwitch, y: &Mat) -> Vec<K> {
    if ms.l == 0 {
        return Vec::new();
    }
    let y6 = ms.y6();
    let o4: usize = y6[..4].iter().sum();
    let o5 = o4 + ms.l;
    vec![y.get(o4 + ms.l - 1, ms.n2).sub(y.get(o5, ms.n2 + 1))]
}

pub fn mid_ybar_form(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarUpper, ms.n, ms.r)?;
    let ubar = sub.random_gl(alg, rng);
    let m = ms.bar(&ubar);
    let u = ms.random_u(alg, rng);
    let u1 = ms.u1(alg, &u);
    let w = ms.w(alg);
    let y6 = ms.y6();
    ck.eq("w⁻¹·u′·w", &conj(&w, &u1)?, &Mat::unipotent(alg, &y6, &[(2, 1, &u.x1), (4, 3, &u.y1)]));
    let want = Mat::unipotent(alg, &y6, &[(3, 1, &m.c1), (4, 0, &m.a2), (4, 1, &m.b), (4, 2, &m.a1), (5, 1, &m.c2)]);
    ck.eq("w⁻¹·ū·w", &conj(&w, &ubar)?, &want);
    let both = conj(&w, &u1.mul(&ubar))?;
    let b_new = m.b.add(&u.y1.mul(&m.c1));
    let want = Mat::unipotent(
        alg,
        &y6,
        &[(2, 1, &u.x1), (3, 1, &m.c1), (4, 0, &m.a2), (4, 1, &b_new), (4, 2, &m.a1), (4, 3, &u.y1), (5, 1, &m.c2)],
    );
    ck.eq("w⁻¹·u′·ū·w", &both, &want);
    ck.holds("w⁻¹·u′·ū·w lies in Ȳ", ybar_pattern(&ms).contains(&both));
    ck.eq_k("ψ_Ȳ(w⁻¹u′ūw) = ψ_X̄(ū)", &ybar_character(&ms, &both), &sub.character(&ubar, false));
    Ok(())
}

pub fn mid_levi_invariance(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ms = MidSwitch::new(p)?;
    let (n, r, r1, r2) = (ms.n, ms.r, ms.r1, ms.r2);
    if ms.l == 0 {
        ck.empty_block();
    }
    let h = Mat::random_invertible(alg, 2 * r2, rng);
    let hs = [r2, r2];
    let jh = j_upper(n, r, &j_lower(n, r2, &h)?)?;
    let want = Mat::unipotent(
        alg,
        &[r2, r1, r1, r2],
        &[(0, 0, &h.block(&hs, &hs, 0, 0)), (0, 3, &h.block(&hs, &hs, 0, 1)), (3, 0, &h.block(&hs, &hs, 1, 0)), (3, 3, &h.block(&hs, &hs, 1, 1))],
    );
    ck.eq("j^{n,r}(j_{n,r″}(h))", &jh, &want);
    let w = ms.w(alg);
    let lev = Mat::block_diag(&[&id(alg, r1), &h, &id(alg, r1)]);
    ck.eq("w⁻¹·j^{n,r}(j_{n,r″}(h))·w", &conj(&w, &jh)?, &lev);
    let pat = ybar_pattern(&ms);
    let y = Mat::identity(alg, 2 * r).add(&pat.random_nilpotent(alg, rng));
    let moved = conj(&lev, &y)?;
    ck.holds("the conjugate lies in Ȳ", pat.contains(&moved));
    ck.eq_k("ψ_Ȳ after conjugation", &ybar_character(&ms, &moved), &ybar_character(&ms, &y));
    Ok(())
}

// ---------------------------------------------------------------------------
// switching r to r″ when r ≤ n

struct LargeSwitch {
    n: usize,
    r: usize,
    r1: usize,
    r2: usize,
    m: usize,
}

impl LargeSwitch {
    fn new(p: &Params) -> Result<Self> {
        let (r1, r2) = p.need_split()?;
        if r1 + r2 != p.r || p.r > p.n {
            return Err(GroupError::BadSize("needs r′ + r″ = r ≤ n".into()));
        }
        Ok(Self { n: p.n, r: p.r, r1, r2, m: p.n - p.r })
    }

    fn s7(&self) -> [usize; 7] {
        [self.r2, self.r1, self.m, 1, self.m, self.r1, self.r2]
    }

    /// (A₁, A₂, B₂, B₁) of x̄ ∈ X̄_{n,r}.
    fn parts(&self, xb: &Mat) -> [Mat; 4] {
        let s = self.s7();
        [xb.block(&s, &s, 2, 0), xb.block(&s, &s, 2, 1), xb.block(&s, &s, 5, 4), xb.block(&s, &s, 6, 4)]
    }

    fn u(&self, alg: Alg, x: &Mat, y: &Mat) -> Mat {
        Mat::unipotent(alg, &[self.r2, self.r1, self.r1, self.r2], &[(0, 1, x), (2, 3, y)])
    }
}

pub fn large_ju_unipotent(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ls = LargeSwitch::new(p)?;
    let x = rnd(alg, ls.r2, ls.r1, rng);
    let y = rnd(alg, ls.r1, ls.r2, rng);
    let ju = j_lower(ls.n, ls.r, &ls.u(alg, &x, &y))?;
    ck.eq("j_{n,r}(u)", &ju, &Mat::unipotent(alg, &ls.s7(), &[(0, 1, &x), (5, 6, &y)]));
    ck.holds("j_{n,r}(u) is upper unipotent", ju.is_upper_unipotent());
    Ok(())
}

pub fn large_u_conjugation(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ls = LargeSwitch::new(p)?;
    let sub = Subgroup::new(SubgroupKind::XbarLower, ls.n, ls.r)?;
    if sub.is_trivial() {
        ck.empty_block();
    }
    let xb = sub.random_gl(alg, rng);
    let [a1, a2, b2, b1] = ls.parts(&xb);
    let x = rnd(alg, ls.r2, ls.r1, rng);
    let y = rnd(alg, ls.r1, ls.r2, rng);
    let ju = j_lower(ls.n, ls.r, &ls.u(alg, &x, &y))?;
    let moved = ju.mul(&xb).mul(&ju.inverse()?);
    let want = Mat::unipotent(alg, &ls.s7(), &[(2, 0, &a1), (2, 1, &a2.sub(&a1.mul(&x))), (5, 4, &b2.add(&y.mul(&b1))), (6, 4, &b1)]);
    ck.eq("j(u)·x̄·j(u)⁻¹", &moved, &want);
    ck.holds("the conjugate lies in X̄_{n,r}", sub.contains_gl(&moved));
    Ok(())
}

pub fn large_w_ybar(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ls = LargeSwitch::new(p)?;
    let (r1, r2) = (ls.r1, ls.r2);
    let y1 = rnd(alg, r1, r2, rng);
    let y2 = rnd(alg, r2, r1, rng);
    let yb = Mat::unipotent(alg, &[r2, r1, r1, r2], &[(1, 0, &y1), (3, 2, &y2)]);
    let w = w_switch(alg, r1, r2);
    ck.eq("w⁻¹·ȳ·w", &conj(&w, &yb)?, &Mat::unipotent(alg, &[r1, r2, r2, r1], &[(0, 1, &y1), (2, 3, &y2)]));
    Ok(())
}

pub fn large_factorization(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ls = LargeSwitch::new(p)?;
    let (r1, r2) = (ls.r1, ls.r2);
    let sub = Subgroup::new(SubgroupKind::XbarLower, ls.n, ls.r)?;
    let sub2 = Subgroup::new(SubgroupKind::XbarLower, ls.n, r2)?;
    let xb = sub.random_gl(alg, rng);
    let [a1, a2, b2, b1] = ls.parts(&xb);
    let y1 = rnd(alg, r1, r2, rng);
    let y2 = rnd(alg, r2, r1, rng);
    let yb = Mat::unipotent(alg, &[r2, r1, r1, r2], &[(1, 0, &y1), (3, 2, &y2)]);
    let s7 = ls.s7();
    let jy = j_lower(ls.n, ls.r, &yb)?;
    ck.eq("j_{n,r}(ȳ)", &jy, &Mat::unipotent(alg, &s7, &[(1, 0, &y1), (6, 5, &y2)]));
    let prod = Mat::unipotent(alg, &s7, &[(1, 0, &y1), (2, 0, &a1), (2, 1, &a2), (5, 4, &b2), (6, 4, &b1.add(&y2.mul(&b2))), (6, 5, &y2)]);
    ck.eq("j_{n,r}(ȳ)·x̄", &jy.mul(&xb), &prod);
    let x2 = Mat::unipotent(alg, &s7, &[(1, 0, &y1), (2, 0, &a1), (6, 4, &b1), (6, 5, &y2)]);
    let yp = Mat::unipotent(alg, &s7, &[(2, 1, &a2), (5, 4, &b2)]);
    ck.eq("j_{n,r}(ȳ)·x̄ = x̄″·ȳ′", &prod, &x2.mul(&yp));
    ck.holds("x̄″ lies in X̄_{n,r″}", sub2.contains_gl(&x2));
    Ok(())
}

pub fn large_iota(p: &Params, alg: Alg, rng: &mut ChaCha8Rng, ck: &mut Checker) -> Result<()> {
    let ls = LargeSwitch::new(p)?;
    let (r1, r2) = (ls.r1, ls.r2);
    let h = Mat::random_invertible(alg, 2 * r2, rng);
    let ih = iota(ls.r, r2, &h)?;
    let w = w_switch(alg, r1, r2);
    ck.eq("w⁻¹·ı_{r,r″}(h′)·w", &conj(&w, &ih)?, &Mat::block_diag(&[&id(alg, r1), &h, &id(alg, r1)]));
    let jh = j_lower(ls.n, r2, &h)?;
    ck.eq("j_{n,r}(ı_{r,r″}(h′))", &j_lower(ls.n, ls.r, &ih)?, &jh);
    let sub = Subgroup::new(SubgroupKind::XbarLower, ls.n, ls.r)?;
    let [_, a2, b2, _] = ls.parts(&sub.random_gl(alg, rng));
    let yp = Mat::unipotent(alg, &ls.s7(), &[(2, 1, &a2), (5, 4, &b2)]);
    ck.eq("ȳ′ commutes with j_{n,r″}(h′)", &yp.mul(&jh), &jh.mul(&yp));
    Ok(())
}

/// Looks up a builder by its manifest name.
pub fn builder(name: &str) -> Option<Builder> {
    let b: Builder = match name {
        "j_squares" => j_squares,
        "s_hermitian" => s_hermitian,
        "q_change" => q_change,
        "i_prime_square" => i_prime_square,
        "j_lower_homomorphism" => j_lower_homomorphism,
        "j_upper_homomorphism" => j_upper_homomorphism,
        "xbar_upper_group" => xbar_upper_group,
        "xbar_lower_group" => xbar_lower_group,
        "y_lower_stable" => y_lower_stable,
        "y_upper_stable" => y_upper_stable,
        "pbar_conjugation" => pbar_conjugation,
        "pbar_levi" => pbar_levi,
        "c_conjugation" => c_conjugation,
        "block_shapes" => block_shapes,
        "lwk_blocks" => lwk_blocks,
        "product_form" => product_form,
        "move_past" => move_past,
        "levi_conjugates" => levi_conjugates,
        "h_formula" => h_formula,
        "final_commutation" => final_commutation,
        "switch_w_xbar" => switch_w_xbar,
        "switch_w_u" => switch_w_u,
        "switch_nbar" => switch_nbar,
        "switch_u_conjugation" => switch_u_conjugation,
        "switch_w_embedding" => switch_w_embedding,
        "mid_u_factor" => mid_u_factor,
        "mid_u2_conjugation" => mid_u2_conjugation,
        "mid_z_embedding" => mid_z_embedding,
        "mid_b_factor" => mid_b_factor,
        "mid_commutations" => mid_commutations,
        "mid_w_displays" => mid_w_displays,
        "mid_xbar_step" => mid_xbar_step,
        "mid_ybar_form" => mid_ybar_form,
        "mid_levi_invariance" => mid_levi_invariance,
        "large_ju_unipotent" => large_ju_unipotent,
        "large_u_conjugation" => large_u_conjugation,
        "large_w_ybar" => large_w_ybar,
        "large_factorization" => large_factorization,
        "large_iota" => large_iota,
        _ => return None,
    };
    Some(b)
}
