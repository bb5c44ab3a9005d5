//! Structure matrices, the two embeddings and random group elements.

use rand::Rng;

use crate::error::{GroupError, Result};
use crate::matrix::Mat;
use crate::scalar::{q_frac, Alg};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Antidiagonal ones J_k.
    J,
    /// The Hermitian form S_N defining U_N.
    S,
    /// The change of basis used by j^{n,r}; parameters (n, r).
    Q,
    /// diag(1, −1, 1, …).
    IPrime,
    /// w_{i,j} = [[0, I_j], [I_i, 0]].
    W,
}

/// J_1 = (1), J_k = [[0, J_{k−1}], [1, 0]].
pub fn j_mat(alg: Alg, k: usize) -> Result<Mat> {
    if k == 0 {
        return Err(GroupError::BadSize("J_k needs k ≥ 1".into()));
    }
    Ok(Mat::from_fn(alg, k, k, |i, j| if i + j == k - 1 { alg.one() } else { alg.zero() }))
}

/// S_N = J_N for even N; for odd N the middle entry of J_N becomes −2.
pub fn s_mat(alg: Alg, n: usize) -> Result<Mat> {
    let mut s = j_mat(alg, n)?;
    if n % 2 == 1 {
        s.set(n / 2, n / 2, alg.int(-2));
    }
    Ok(s)
}

/// I′_r = diag(1, −1, 1, …, (−1)^{r−1}); also used for d_r.
pub fn i_prime(alg: Alg, r: usize) -> Result<Mat> {
    if r == 0 {
        return Err(GroupError::BadSize("I′_r needs r ≥ 1".into()));
    }
    Ok(Mat::from_fn(alg, r, r, |i, j| {
        if i != j {
            alg.zero()
        } else if i % 2 == 0 {
            alg.one()
        } else {
            alg.int(-1)
        }
    }))
}

/// w_{i,j} = [[0, I_j], [I_i, 0]] of size i + j.
pub fn w_mat(alg: Alg, i: usize, j: usize) -> Mat {
    Mat::blocks(alg, &[j, i], &[i, j], &[(0, 1, &Mat::identity(alg, j)), (1, 0, &Mat::identity(alg, i))])
}

/// Q ∈ GL_{2r}: rows I_n, e_{n+1} + e_{2r−n}, I_{2(r−n−1)}, e_{n+1} − e_{2r−n}, I_n.
pub fn q_mat(alg: Alg, n: usize, r: usize) -> Result<Mat> {
    if n >= r {
        return Err(GroupError::BadSize(format!("Q needs n < r, got n = {n}, r = {r}")));
    }
    let dim = 2 * r;
    let a = n;
    let b = 2 * r - n - 1;
    let mut m = Mat::identity(alg, dim);
    m.set(a, b, alg.one());
    m.set(b, a, alg.one());
    m.set(b, b, alg.int(-1));
    Ok(m)
}

pub fn build_structure(alg: Alg, kind: Structure, a: usize, b: usize) -> Result<Mat> {
    match kind {
        Structure::J => j_mat(alg, a),
        Structure::S => s_mat(alg, a),
        Structure::Q => q_mat(alg, a, b),
        Structure::IPrime => i_prime(alg, a),
        Structure::W => {
            if a + b == 0 {
                return Err(GroupError::BadSize("w_{0,0} is empty".into()));
            }
            Ok(w_mat(alg, a, b))
        }
    }
}

/// ᵗθ(g) S_N g = S_N.
pub fn is_unitary(g: &Mat) -> bool {
    if !g.is_square() || g.rows() == 0 {
        return g.is_square();
    }
    let s = s_mat(g.alg(), g.rows()).expect("size checked");
    g.theta_t().mul(&s).mul(g) == s
}

fn check_square(g: &Mat, n: usize, what: &str) -> Result<()> {
    if g.rows() != n || g.cols() != n {
        return Err(GroupError::NotInSourceGroup(format!("{what} needs a {n}x{n} matrix, got {}x{}", g.rows(), g.cols())));
    }
    Ok(())
}

/// j_{n,r}: [[a, b], [c, d]] ↦ [[a, 0, b], [0, I_{2(n−r)+1}, 0], [c, 0, d]], for n ≥ r.
/// The matrix is only shape-checked; use [`embed`] for the unitary version.
pub fn j_lower(n: usize, r: usize, g: &Mat) -> Result<Mat> {
    if n < r {
        return Err(GroupError::BadSize(format!("j_(n,r) needs n ≥ r, got n = {n}, r = {r}")));
    }
    check_square(g, 2 * r, "j_(n,r)")?;
    let alg = g.alg();
    let s = [r, r];
    let sizes = [r, 2 * (n - r) + 1, r];
    Ok(Mat::unipotent(
        alg,
        &sizes,
        &[(0, 0, &g.block(&s, &s, 0, 0)), (0, 2, &g.block(&s, &s, 0, 1)), (2, 0, &g.block(&s, &s, 1, 0)), (2, 2, &g.block(&s, &s, 1, 1))],
    ))
}

/// j^{n,r}(g) = Q·[[a, 0, 0, b], [0, 1, 0, 0], [0, 0, I, 0], [c, 0, 0, d]]·Q^{-1} for n < r,
/// with a of size n and d of size n + 1.
pub fn j_upper(n: usize, r: usize, g: &Mat) -> Result<Mat> {
    if n >= r {
        return Err(GroupError::BadSize(format!("j^(n,r) needs n < r, got n = {n}, r = {r}")));
    }
    check_square(g, 2 * n + 1, "j^(n,r)")?;
    let alg = g.alg();
    let l = r - n - 1;
    let s = [n, n + 1];
    let sizes = [n, 1, 2 * l, n + 1];
    let m = Mat::unipotent(
        alg,
        &sizes,
        &[(0, 0, &g.block(&s, &s, 0, 0)), (0, 3, &g.block(&s, &s, 0, 1)), (3, 0, &g.block(&s, &s, 1, 0)), (3, 3, &g.block(&s, &s, 1, 1))],
    );
    let q = q_mat(alg, n, r)?;
    Ok(q.mul(&m).mul(&q.inverse()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// j_{n,r}: U_{2r} → U_{2n+1}, n ≥ r.
    Lower,
    /// j^{n,r}: U_{2n+1} → U_{2r}, n < r.
    Upper,
}

/// The embedding restricted to the unitary source group (membership-checked).
pub fn embed(kind: Embedding, n: usize, r: usize, g: &Mat) -> Result<Mat> {
    if !is_unitary(g) {
        return Err(GroupError::NotInSourceGroup(format!("{}x{} matrix is not unitary", g.rows(), g.cols())));
    }
    match kind {
        Embedding::Lower => j_lower(n, r, g),
        Embedding::Upper => j_upper(n, r, g),
    }
}

/// ı_{r,r″}: [[a, b], [c, d]] ↦ [[a, 0, b], [0, I_{2r′}, 0], [c, 0, d]] in GL_{2r}.
pub fn iota(r: usize, r2: usize, h: &Mat) -> Result<Mat> {
    if r2 > r {
        return Err(GroupError::BadSize(format!("ı_(r,r″) needs r″ ≤ r, got {r2} > {r}")));
    }
    check_square(h, 2 * r2, "ı_(r,r″)")?;
    let s = [r2, r2];
    let sizes = [r2, 2 * (r - r2), r2];
    Ok(Mat::unipotent(
        h.alg(),
        &sizes,
        &[(0, 0, &h.block(&s, &s, 0, 0)), (0, 2, &h.block(&s, &s, 0, 1)), (2, 0, &h.block(&s, &s, 1, 0)), (2, 2, &h.block(&s, &s, 1, 1))],
    ))
}

/// a* = J ᵗθ(a)^{-1} J.
pub fn star(a: &Mat) -> Result<Mat> {
    if a.rows() == 0 {
        return Ok(a.clone());
    }
    let j = j_mat(a.alg(), a.rows())?;
    Ok(j.mul(&a.theta_t().inverse()?).mul(&j))
}

/// exp of a nilpotent matrix (finite sum).
pub fn exp_nilpotent(x: &Mat) -> Mat {
    let alg = x.alg();
    let n = x.rows();
    let mut out = Mat::identity(alg, n);
    let mut term = Mat::identity(alg, n);
    for k in 1..=n {
        term = term.mul(x).scale_q(&q_frac(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// X ↦ X − S^{-1} ᵗθ(X) S, which lands in the Lie algebra of U_N.
pub fn unitary_lie_projection(y: &Mat) -> Mat {
    let s = s_mat(y.alg(), y.rows()).expect("non-empty");
    let si = s.inverse().expect("S is invertible");
    y.sub(&si.mul(&y.theta_t()).mul(&s))
}

/// Random strictly lower (or upper) triangular unitary element.
pub fn random_unitary_unipotent<R: Rng + ?Sized>(alg: Alg, n: usize, lower: bool, rng: &mut R) -> Mat {
    let y = Mat::from_fn(alg, n, n, |i, j| {
        let below = if lower { i > j } else { i < j };
        if below {
            alg.random(rng, 2)
        } else {
            alg.zero()
        }
    });
    exp_nilpotent(&unitary_lie_projection(&y).scale_q(&q_frac(1, 2)))
}

/// diag(a, α, a*) with a ∈ GL_{⌊N/2⌋} and N(α) = 1 (α only for odd N).
pub fn random_unitary_levi<R: Rng + ?Sized>(alg: Alg, n: usize, rng: &mut R) -> Mat {
    let h = n / 2;
    let a = Mat::random_invertible(alg, h, rng);
    let a_star = star(&a).expect("invertible");
    let mid = Mat::from_fn(alg, n % 2, n % 2, |_, _| alg.random_norm_one(rng));
    let sizes = [h, n % 2, h];
    Mat::blocks(alg, &sizes, &sizes, &[(0, 0, &a), (1, 1, &mid), (2, 2, &a_star)])
}

/// A random element of U_N generated by a Levi element and two unipotent factors.
pub fn random_unitary<R: Rng + ?Sized>(alg: Alg, n: usize, rng: &mut R) -> Mat {
    let m = random_unitary_levi(alg, n, rng);
    let lo = random_unitary_unipotent(alg, n, true, rng);
    let up = random_unitary_unipotent(alg, n, false, rng);
    Mat::prod(&[&lo, &m, &up])
}
