use lg_chars::psi0;
use lg_padic::{PAdic, PAdicField};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Result, TateError};

/// coeff · ψ₀(Σ ω_i x_i) · Π 1[x_i ∈ c_i + p^{k_i} O].
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub center: Vec<PAdic>,
    pub level: Vec<i32>,
    pub phase: Vec<PAdic>,
}

/// Membership of an element in p^k O, certified at the element's precision.
pub(crate) fn in_ideal(d: &PAdic, k: i32) -> Result<bool> {
    match d.valuation() {
        Some(v) => Ok(v >= k),
        None => match d.abs_precision() {
            Some(a) if a < k as i64 => Err(lg_padic::PadicError::PrecisionLoss(format!(
                "difference known modulo p^{a}, ball of level {k} requested"
            ))
            .into()),
            _ => Ok(true),
        },
    }
}

impl Term {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn eval(&self, x: &[PAdic]) -> Result<Complex64> {
        let mut arg: Option<PAdic> = None;
        for i in 0..self.dim() {
            if !in_ideal(&x[i].sub(&self.center[i]), self.level[i])? {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if !self.phase[i].is_zero() {
                let t = self.phase[i].mul(&x[i]);
                arg = Some(match arg {
                    Some(a) => a.add(&t),
                    None => t,
                });
            }
        }
        Ok(match arg {
            Some(a) => self.coeff * psi0(&a)?,
            None => self.coeff,
        })
    }

    /// Whether the box contains the origin.
    pub fn contains_zero(&self) -> bool {
        self.center.iter().zip(&self.level).all(|(c, k)| c.val() >= *k)
    }
}

/// A Schwartz–Bruhat function on F^N as a finite sum of phased boxes.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwartzFn {
    field: PAdicField,
    dim: usize,
    terms: Vec<Term>,
}

impl SchwartzFn {
    pub fn zero(field: PAdicField, dim: usize) -> Self {
        Self { field, dim, terms: vec![] }
    }

    /// The indicator of c + p^{k_1}O × … × p^{k_N}O.
    pub fn indicator(field: PAdicField, center: Vec<PAdic>, level: Vec<i32>) -> Result<Self> {
        if center.len() != level.len() || center.is_empty() {
            return Err(TateError::Shape("center and level lengths differ".into()));
        }
        let dim = center.len();
        let phase = vec![field.zero(); dim];
        Ok(Self { field, dim, terms: vec![Term { coeff: Complex64::new(1.0, 0.0), center, level, phase }] })
    }

    pub fn from_terms(field: PAdicField, dim: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            if t.center.len() != dim || t.level.len() != dim || t.phase.len() != dim {
                return Err(TateError::Shape(format!("term of dimension {} in a {dim}-dimensional function", t.dim())));
            }
        }
        Ok(Self { field, dim, terms })
    }

    /// 1_O^N.
    pub fn unit_box(field: PAdicField, dim: usize) -> Self {
        Self::indicator(field, vec![field.zero(); dim], vec![0; dim]).expect("nonempty")
    }

    pub fn field(&self) -> PAdicField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn eval(&self, x: &[PAdic]) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += t.eval(x)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(TateError::Shape("adding functions of different dimension".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self { field: self.field, dim: self.dim, terms })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff * c, ..t.clone() }).collect();
        Self { terms, ..self.clone() }
    }

    /// (x, y) ↦ a(x)·b(y) for one-dimensional a and b.
    pub fn tensor(a: &Self, b: &Self) -> Result<Self> {
        if a.dim != 1 || b.dim != 1 {
            return Err(TateError::Shape("tensor of one-dimensional functions only".into()));
        }
        let mut terms = Vec::new();
        for s in &a.terms {
            for t in &b.terms {
                terms.push(Term {
                    coeff: s.coeff * t.coeff,
                    center: vec![s.center[0], t.center[0]],
                    level: vec![s.level[0], t.level[0]],
                    phase: vec![s.phase[0], t.phase[0]],
                });
            }
        }
        Ok(Self { field: a.field, dim: 2, terms })
    }

    /// φ(−x).
    pub fn negate_argument(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff,
                center: t.center.iter().map(|c| c.neg()).collect(),
                level: t.level.clone(),
                phase: t.phase.iter().map(|w| w.neg()).collect(),
            })
            .collect();
        Self { terms, ..self.clone() }
    }

    /// Fourier transform with kernel ψ₀(Σ_j κ_j x_{σ(j)} y_j), each coordinate
    /// measure self-dual for its own pairing (vol O = |κ_j|^{1/2}).
    pub fn fourier_diag(&self, kappa: &[PAdic], perm: &[usize]) -> Result<Self> {
        if kappa.len() != self.dim || perm.len() != self.dim {
            return Err(TateError::Shape("kernel size does not match dimension".into()));
        }
        let q = self.field.q() as f64;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut center = vec![self.field.zero(); self.dim];
            let mut level = vec![0; self.dim];
            let mut phase = vec![self.field.zero(); self.dim];
            let mut coeff = t.coeff;
            let mut arg = self.field.zero();
            for j in 0..self.dim {
                let i = perm[j];
                let k = &kappa[j];
                let vk = k.valuation().ok_or(TateError::Shape("zero pairing coefficient".into()))?;
                center[j] = t.phase[i].div(k)?.neg();
                level[j] = -t.level[i] - vk;
                phase[j] = k.mul(&t.center[i]);
                coeff *= q.powf(-(vk as f64) / 2.0 - t.level[i] as f64);
                arg = arg.add(&t.phase[i].mul(&t.center[i]));
            }
            coeff *= psi0(&arg)?;
            terms.push(Term { coeff, center, level, phase });
        }
        Ok(Self { field: self.field, dim: self.dim, terms })
    }

    /// y ↦ φ(x) with x_i = λ_i·y_{σ(i)}.
    pub fn pullback_diag(&self, perm: &[usize], scales: &[PAdic]) -> Result<Self> {
        if perm.len() != self.dim || scales.len() != self.dim {
            return Err(TateError::Shape("map size does not match dimension".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut center = vec![self.field.zero(); self.dim];
            let mut level = vec![0; self.dim];
            let mut phase = vec![self.field.zero(); self.dim];
            for i in 0..self.dim {
                let j = perm[i];
                let lam = &scales[i];
                let vl = lam.valuation().ok_or(TateError::Shape("zero scale".into()))?;
                center[j] = t.center[i].div(lam)?;
                level[j] = t.level[i] - vl;
                phase[j] = t.phase[i].mul(lam);
            }
            terms.push(Term { coeff: t.coeff, center, level, phase });
        }
        Ok(Self { field: self.field, dim: self.dim, terms })
    }

    /// Splits every box into boxes whose coordinate levels are all equal to
    /// the largest one.
    pub fn refine_square(&self) -> Self {
        let p = self.field.p();
        let mut out = Vec::new();
        for t in &self.terms {
            let m = *t.level.iter().max().unwrap();
            let mut parts = vec![t.clone()];
            for i in 0..self.dim {
                let extra = (m - t.level[i]) as u32;
                if extra == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(parts.len() * p.pow(extra) as usize);
                for s in &parts {
                    for r in 0..p.pow(extra) {
                        let mut s2 = s.clone();
                        let shift = self.field.from_residue(r).shift(t.level[i]);
                        s2.center[i] = s.center[i].add(&shift);
                        s2.level[i] = m;
                        next.push(s2);
                    }
                }
                parts = next;
            }
            out.extend(parts);
        }
        Self { terms: out, ..self.clone() }
    }

    /// x ↦ φ(x·h) for a 2×2 matrix h ∈ p^v·GL₂(Z_p) acting on row vectors.
    pub fn right_translate(&self, h: &[[PAdic; 2]; 2]) -> Result<Self> {
        if self.dim != 2 {
            return Err(TateError::Shape("right translation acts on F²".into()));
        }
        let v = h.iter().flatten().map(|x| x.val()).min().unwrap();
        let det = h[0][0].mul(&h[1][1]).sub(&h[0][1].mul(&h[1][0]));
        if det.val() != 2 * v {
            return Err(TateError::Shape("matrix is not a scalar multiple of GL2(Z_p)".into()));
        }
        let inv = [
            [h[1][1].div(&det)?, h[0][1].neg().div(&det)?],
            [h[1][0].neg().div(&det)?, h[0][0].div(&det)?],
        ];
        let sq = self.refine_square();
        let mut terms = Vec::with_capacity(sq.terms.len());
        for t in &sq.terms {
            let c = &t.center;
            let center = vec![
                c[0].mul(&inv[0][0]).add(&c[1].mul(&inv[1][0])),
                c[0].mul(&inv[0][1]).add(&c[1].mul(&inv[1][1])),
            ];
            let w = &t.phase;
            let phase = vec![h[0][0].mul(&w[0]).add(&h[0][1].mul(&w[1])), h[1][0].mul(&w[0]).add(&h[1][1].mul(&w[1]))];
            let k = t.level[0] - v;
            terms.push(Term { coeff: t.coeff, center, level: vec![k, k], phase });
        }
        Ok(Self { field: self.field, dim: 2, terms })
    }

    /// t ↦ φ(t·w) for a nonzero direction w, a function on F.
    pub fn restrict_line(&self, w: &[PAdic]) -> Result<Self> {
        if w.len() != self.dim || w.iter().all(|x| x.is_zero()) {
            return Err(TateError::Shape("restriction needs a nonzero direction".into()));
        }
        let mut terms = Vec::new();
        'terms: for t in &self.terms {
            let mut ball: Option<(PAdic, i32)> = None;
            let mut phase = self.field.zero();
            for i in 0..self.dim {
                if w[i].is_zero() {
                    if !in_ideal(&t.center[i], t.level[i])? {
                        continue 'terms;
                    }
                    continue;
                }
                let c = t.center[i].div(&w[i])?;
                let k = t.level[i] - w[i].val();
                ball = Some(match ball {
                    None => (c, k),
                    Some((c0, k0)) => {
                        let (small, big) = if k >= k0 { ((c, k), (c0, k0)) } else { ((c0, k0), (c, k)) };
                        if !in_ideal(&small.0.sub(&big.0), big.1)? {
                            continue 'terms;
                        }
                        small
                    }
                });
                phase = phase.add(&t.phase[i].mul(&w[i]));
            }
            let (c, k) = ball.expect("some coordinate is nonzero");
            terms.push(Term { coeff: t.coeff, center: vec![c], level: vec![k], phase: vec![phase] });
        }
        Ok(Self { field: self.field, dim: 1, terms })
    }

    /// ∫ φ(x₀, y) ψ₀(ξ y) dy with dy self-dual for ψ₀(κ·).
    pub fn fourier_second_at(&self, x0: &PAdic, xi: &PAdic, kappa: &PAdic) -> Result<Complex64> {
        if self.dim != 2 {
            return Err(TateError::Shape("partial transform needs F²".into()));
        }
        let q = self.field.q() as f64;
        let vol = q.powf(-(kappa.val() as f64) / 2.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if !in_ideal(&x0.sub(&t.center[0]), t.level[0])? {
                continue;
            }
            let freq = t.phase[1].add(xi);
            if !in_ideal(&freq, -t.level[1])? {
                continue;
            }
            let ph = t.phase[0].mul(x0).add(&freq.mul(&t.center[1]));
            acc += t.coeff * vol * q.powi(-t.level[1]) * psi0(&ph)?;
        }
        Ok(acc)
    }

    /// t ↦ ∫ φ(t, y) dy with dy self-dual for ψ₀(κ·).
    pub fn integrate_second(&self, kappa: &PAdic) -> Result<Self> {
        if self.dim != 2 {
            return Err(TateError::Shape("partial integral needs F²".into()));
        }
        let q = self.field.q() as f64;
        let vol = q.powf(-(kappa.val() as f64) / 2.0);
        let mut terms = Vec::new();
        for t in &self.terms {
            if !in_ideal(&t.phase[1], -t.level[1])? {
                continue;
            }
            let c = t.coeff * vol * q.powi(-t.level[1]) * psi0(&t.phase[1].mul(&t.center[1]))?;
            terms.push(Term { coeff: c, center: vec![t.center[0]], level: vec![t.level[0]], phase: vec![t.phase[0]] });
        }
        Ok(Self { field: self.field, dim: 1, terms })
    }

    /// Finest coordinate level and smallest valuation reached by the
    /// support, both over all terms and coordinates.
    pub fn extent(&self) -> (i32, i32) {
        let mut fine = i32::MIN;
        let mut low = i32::MAX;
        for t in &self.terms {
            for i in 0..self.dim {
                fine = fine.max(t.level[i]);
                if !t.phase[i].is_zero() {
                    fine = fine.max(-t.phase[i].val());
                }
                low = low.min(t.center[i].val().min(t.level[i]));
            }
        }
        (fine, low)
    }

    /// A random point whose coordinates have valuation in `vmin..=vmax` or are 0.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R, vmin: i32, vmax: i32) -> Vec<PAdic> {
        (0..self.dim)
            .map(|_| if rng.gen_bool(0.1) { self.field.zero() } else { self.field.random(rng, vmin, vmax) })
            .collect()
    }
}
