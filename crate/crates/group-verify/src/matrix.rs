//! Dense exact matrices over [`K`], including 0-sized blocks.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{GroupError, Result};
use crate::scalar::{Alg, K};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    alg: Alg,
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl Mat {
    pub fn zeros(alg: Alg, rows: usize, cols: usize) -> Self {
        Self { alg, rows, cols, data: vec![alg.zero(); rows * cols] }
    }

    pub fn identity(alg: Alg, n: usize) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, alg.one());
        }
        m
    }

    pub fn from_fn(alg: Alg, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { alg, rows, cols, data }
    }

    /// Integer entries given row by row.
    pub fn from_ints(alg: Alg, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(alg, rows.len(), cols, |i, j| alg.int(rows[i][j]))
    }

    pub fn random<R: Rng + ?Sized>(alg: Alg, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| alg.random(rng, 3)).collect();
        Self { alg, rows, cols, data }
    }

    /// A random invertible matrix (redrawn until the determinant is a unit).
    pub fn random_invertible<R: Rng + ?Sized>(alg: Alg, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(alg, n, n, rng);
            if alg.is_unit(&m.det()) {
                return m;
            }
        }
    }

    /// Random strictly upper triangular entries above an identity diagonal.
    pub fn random_upper_unipotent<R: Rng + ?Sized>(alg: Alg, n: usize, rng: &mut R) -> Self {
        let mut m = Self::identity(alg, n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, alg.random(rng, 3));
            }
        }
        m
    }

    pub fn alg(&self) -> Alg {
        self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[K] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(K::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.alg, self.rows)
    }

    fn same_shape(&self, o: &Mat, what: &str) {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{what}: {}x{} against {}x{}",
            self.rows,
            self.cols,
            o.rows,
            o.cols
        );
    }

    pub fn add(&self, o: &Mat) -> Mat {
        self.same_shape(o, "add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        self.with_data(data)
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.same_shape(o, "sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        self.with_data(data)
    }

    pub fn neg(&self) -> Mat {
        self.with_data(self.data.iter().map(K::neg).collect())
    }

    pub fn scale(&self, c: &K) -> Mat {
        self.with_data(self.data.iter().map(|a| self.alg.mul(a, c)).collect())
    }

    pub fn scale_q(&self, c: &BigRational) -> Mat {
        self.with_data(self.data.iter().map(|a| a.scale(c)).collect())
    }

    fn with_data(&self, data: Vec<K>) -> Mat {
        Mat { alg: self.alg, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "mul: {}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols);
        let alg = self.alg;
        let mut out = Mat::zeros(alg, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&alg.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Product of a list of matrices, left to right.
    pub fn prod(ms: &[&Mat]) -> Mat {
        let mut it = ms.iter();
        let first = (*it.next().expect("empty product")).clone();
        it.fold(first, |acc, m| acc.mul(m))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.alg, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// θ applied entrywise.
    pub fn theta(&self) -> Mat {
        self.with_data(self.data.iter().map(|a| self.alg.theta(a)).collect())
    }

    /// ᵗθ(A).
    pub fn theta_t(&self) -> Mat {
        self.theta().transpose()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        Mat::from_fn(self.alg, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Block (i, j) for the given row and column partitions.
    pub fn block(&self, rows: &[usize], cols: &[usize], i: usize, j: usize) -> Mat {
        let r0: usize = rows[..i].iter().sum();
        let c0: usize = cols[..j].iter().sum();
        self.submatrix(r0, c0, rows[i], cols[j])
    }

    /// Writes `m` with its top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, m: &Mat) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "paste out of range");
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    /// A block matrix with zero default, the listed blocks placed by index.
    pub fn blocks(alg: Alg, rows: &[usize], cols: &[usize], items: &[(usize, usize, &Mat)]) -> Mat {
        let mut out = Mat::zeros(alg, rows.iter().sum(), cols.iter().sum());
        for (i, j, m) in items {
            assert!(
                m.rows == rows[*i] && m.cols == cols[*j],
                "block ({i}, {j}) is {}x{}, slot is {}x{}",
                m.rows,
                m.cols,
                rows[*i],
                cols[*j]
            );
            out.paste(rows[..*i].iter().sum(), cols[..*j].iter().sum(), m);
        }
        out
    }

    /// A square block matrix with identity default; listed blocks override.
    pub fn unipotent(alg: Alg, sizes: &[usize], items: &[(usize, usize, &Mat)]) -> Mat {
        let n: usize = sizes.iter().sum();
        let mut out = Mat::identity(alg, n);
        let cut = Mat::blocks(alg, sizes, sizes, items);
        for (i, j, _) in items {
            let r0: usize = sizes[..*i].iter().sum();
            let c0: usize = sizes[..*j].iter().sum();
            out.paste(r0, c0, &cut.submatrix(r0, c0, sizes[*i], sizes[*j]));
        }
        out
    }

    pub fn block_diag(ms: &[&Mat]) -> Mat {
        let alg = ms[0].alg;
        let rows: Vec<usize> = ms.iter().map(|m| m.rows).collect();
        let cols: Vec<usize> = ms.iter().map(|m| m.cols).collect();
        let items: Vec<(usize, usize, &Mat)> = ms.iter().enumerate().map(|(i, m)| (i, i, *m)).collect();
        Mat::blocks(alg, &rows, &cols, &items)
    }

    /// [[I, 0], [D, I]].
    pub fn lower_unipotent(d: &Mat) -> Mat {
        Mat::unipotent(d.alg, &[d.cols, d.rows], &[(1, 0, d)])
    }

    /// [[I, X], [0, I]].
    pub fn upper_unipotent(x: &Mat) -> Mat {
        Mat::unipotent(x.alg, &[x.rows, x.cols], &[(0, 1, x)])
    }

    /// Rational components (x-parts and y-parts) of a split-algebra matrix.
    pub fn split_parts(&self) -> (QMat, QMat) {
        let f = |pick: fn(&K) -> BigRational| QMat {
            n_rows: self.rows,
            n_cols: self.cols,
            data: self.data.iter().map(pick).collect(),
        };
        (f(|k| k.x.clone()), f(|k| k.y.clone()))
    }

    fn from_split_parts(alg: Alg, a: &QMat, b: &QMat) -> Mat {
        Mat::from_fn(alg, a.n_rows, a.n_cols, |i, j| K::new(a.get(i, j).clone(), b.get(i, j).clone()))
    }

    pub fn det(&self) -> K {
        assert!(self.is_square(), "det of a non-square matrix");
        match self.alg {
            Alg::Split => {
                let (a, b) = self.split_parts();
                K::new(a.det(), b.det())
            }
            Alg::Field { .. } => {
                let alg = self.alg;
                let n = self.rows;
                let mut m = self.data.clone();
                let mut det = alg.one();
                for c in 0..n {
                    let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                        return alg.zero();
                    };
                    if p != c {
                        for j in 0..n {
                            m.swap(p * n + j, c * n + j);
                        }
                        det = det.neg();
                    }
                    let piv = m[c * n + c].clone();
                    det = alg.mul(&det, &piv);
                    let pinv = alg.inv(&piv).expect("non-zero element of a field");
                    for r in c + 1..n {
                        let f = alg.mul(&m[r * n + c], &pinv);
                        if f.is_zero() {
                            continue;
                        }
                        for j in c..n {
                            let v = m[r * n + j].sub(&alg.mul(&f, &m[c * n + j]));
                            m[r * n + j] = v;
                        }
                    }
                }
                det
            }
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(GroupError::BadSize(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        match self.alg {
            Alg::Split => {
                let (a, b) = self.split_parts();
                Ok(Mat::from_split_parts(self.alg, &a.inverse()?, &b.inverse()?))
            }
            Alg::Field { .. } => {
                let alg = self.alg;
                let n = self.rows;
                let mut m = self.clone();
                let mut inv = Mat::identity(alg, n);
                for c in 0..n {
                    let p = (c..n)
                        .find(|&r| !m.get(r, c).is_zero())
                        .ok_or_else(|| GroupError::Singular(format!("{n}x{n} matrix")))?;
                    m.swap_rows(p, c);
                    inv.swap_rows(p, c);
                    let pinv = alg.inv(m.get(c, c)).expect("non-zero element of a field");
                    m.scale_row(c, &pinv);
                    inv.scale_row(c, &pinv);
                    for r in 0..n {
                        if r != c && !m.get(r, c).is_zero() {
                            let f = m.get(r, c).clone();
                            m.axpy_row(r, c, &f);
                            inv.axpy_row(r, c, &f);
                        }
                    }
                }
                Ok(inv)
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: &K) {
        for j in 0..self.cols {
            let v = self.alg.mul(self.get(r, j), c);
            self.set(r, j, v);
        }
    }

    /// row_r −= f · row_c
    fn axpy_row(&mut self, r: usize, c: usize, f: &K) {
        for j in 0..self.cols {
            let v = self.get(r, j).sub(&self.alg.mul(f, self.get(c, j)));
            self.set(r, j, v);
        }
    }

    /// Sum of the superdiagonal entries z₁₂ + z₂₃ + ….
    pub fn superdiagonal_sum(&self) -> K {
        (1..self.rows.min(self.cols)).fold(self.alg.zero(), |acc, i| acc.add(self.get(i - 1, i)))
    }

    pub fn is_upper_unipotent(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| if i == j { self.alg.is_one(self.get(i, j)) } else { self.get(i, j).is_zero() })
            })
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// A dense rational matrix, used for split components and Jacobians.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    n_rows: usize,
    n_cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { n_rows: rows, n_cols: cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.n_rows, self.n_cols, "det of a non-square matrix");
        let n = self.n_rows;
        let mut m = self.data.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[c * n + c].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &m[r * n + c] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = &m[r * n + j] - &f * &m[c * n + j];
                    m[r * n + j] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<QMat> {
        let n = self.n_rows;
        let mut m = self.clone();
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            inv.set(i, i, BigRational::one());
        }
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m.get(r, c).is_zero())
                .ok_or_else(|| GroupError::Singular(format!("{n}x{n} rational matrix")))?;
            for mat in [&mut m, &mut inv] {
                for j in 0..n {
                    mat.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = m.get(c, c).clone();
            for mat in [&mut m, &mut inv] {
                for j in 0..n {
                    let v = mat.get(c, j) / &piv;
                    mat.set(c, j, v);
                }
            }
            for r in 0..n {
                let f = m.get(r, c).clone();
                if r == c || f.is_zero() {
                    continue;
                }
                for mat in [&mut m, &mut inv] {
                    for j in 0..n {
                        let v = mat.get(r, j) - &f * mat.get(c, j);
                        mat.set(r, j, v);
                    }
                }
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_and_det_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for alg in [Alg::field2(), Alg::Split] {
            for n in [0, 1, 3, 5] {
                let a = Mat::random_invertible(alg, n, &mut rng);
                let b = Mat::random_invertible(alg, n, &mut rng);
                assert!(a.mul(&a.inverse().unwrap()).is_identity());
                assert_eq!(a.mul(&b).det(), alg.mul(&a.det(), &b.det()));
            }
        }
    }

    #[test]
    fn blocks_allow_empty_slots() {
        let alg = Alg::Split;
        let x = Mat::from_ints(alg, &[&[1, 2]]);
        let m = Mat::unipotent(alg, &[1, 0, 2], &[(0, 2, &x)]);
        assert_eq!(m, Mat::from_ints(alg, &[&[1, 1, 2], &[0, 1, 0], &[0, 0, 1]]));
        let e = Mat::zeros(alg, 0, 3);
        assert_eq!(e.mul(&Mat::zeros(alg, 3, 0)).rows(), 0);
        assert!(Mat::identity(alg, 0).inverse().unwrap().is_identity());
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let alg = Alg::field2();
        let m = Mat::from_ints(alg, &[&[1, 2], &[2, 4]]);
        assert!(matches!(m.inverse(), Err(GroupError::Singular(_))));
        assert!(m.det().is_zero());
    }
}
