//! Pointwise checks of the two Fourier lemmas behind the minimal case.

use lg_chars::AddChar;
use lg_padic::{EtaleAlgebra, PAdic};
use lg_tate::{fourier, Domain, SchwartzFn};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GodementError, Result};
use crate::matrix::h0;
use crate::minimal::from_e_coordinates;
use crate::section::symplectic_fourier;

/// Largest pointwise deviations over the sampled points.
#[derive(Clone, Debug, PartialEq)]
pub struct FtReport {
    pub samples: usize,
    pub max_dev_first: f64,
    pub max_dev_second: f64,
}

fn sample_points(phi: &SchwartzFn, samples: usize, seed: u64) -> Vec<Vec<PAdic>> {
    let f = phi.field();
    let (fine, lo) = phi.extent();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = vec![vec![f.zero(), f.zero()], vec![f.zero(), f.one()], vec![f.one(), f.zero()]];
    while pts.len() < samples.max(3) {
        pts.push(phi.random_point(&mut rng, lo - 1, fine + 1));
    }
    pts
}

/// Field case: with Φ(z + δw) = φ(−Δw, z), the transformed φ̂ read the same
/// way equals |δ|_E^{1/2}·Φ̂(−δθ(a)), Φ̂ the Fourier transform on E for ψ∘Tr.
/// Only `max_dev_first` is meaningful.
pub fn verify_ft_field(alg: &EtaleAlgebra, big: &SchwartzFn, psi: &AddChar, samples: usize, seed: u64) -> Result<FtReport> {
    if !alg.is_field() {
        return Err(GodementError::Shape("field lemma needs a field E".into()));
    }
    let f = alg.field();
    let d = alg.delta_sq();
    let phi = from_e_coordinates(alg, big)?;
    let hat = symplectic_fourier(&phi, psi)?;
    let big_hat = fourier(&Domain::E(*alg), big, psi)?;
    let c = (f.q() as f64).powf(-d.val() as f64 / 2.0);
    let mut worst: f64 = 0.0;
    let pts = sample_points(&hat, samples, seed);
    for pt in &pts {
        let (x, y) = (pt[0], pt[1]);
        let lhs = hat.eval(&[d.mul(&y).neg(), x])?;
        let rhs = big_hat.eval(&[d.mul(&y), x.neg()])? * c;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(FtReport { samples: pts.len(), max_dev_first: worst, max_dev_second: 0.0 })
}

/// Split case: for φ = ρ(h₀^{-1})(φ₁ ⊗ φ₂), ρ(h₀)φ̂ equals |2|^{-1}·(φ₁ ⊗ φ₂)^
/// at (−x/2, −y/2) (first deviation) and φ̂₂(x)φ̂₁(−y) with the transforms
/// on F taken for ψ (second deviation).
pub fn verify_ft_split(phi1: &SchwartzFn, phi2: &SchwartzFn, psi: &AddChar, samples: usize, seed: u64) -> Result<FtReport> {
    let f = phi1.field();
    let inv_h0 = [[f.one(), f.one()], [f.one(), f.one().neg()]];
    let product = SchwartzFn::tensor(phi1, phi2)?;
    let phi = product.right_translate(&inv_h0)?;
    let moved = symplectic_fourier(&phi, psi)?.right_translate(&h0(&f)?)?;
    let product_hat = symplectic_fourier(&product, psi)?;
    let dom = Domain::F(f);
    let (h1, h2) = (fourier(&dom, phi1, psi)?, fourier(&dom, phi2, psi)?);
    let half = f.from_ratio(-1, 2)?;
    let two_abs = (f.q() as f64).powi(f.from_i64(2).val());
    let (mut first, mut second): (f64, f64) = (0.0, 0.0);
    let pts = sample_points(&moved, samples, seed);
    for pt in &pts {
        let (x, y) = (pt[0], pt[1]);
        let lhs = moved.eval(&[x, y])?;
        let a = product_hat.eval(&[half.mul(&x), half.mul(&y)])? * two_abs;
        let b: Complex64 = h2.eval(&[x])? * h1.eval(&[y.neg()])?;
        first = first.max((lhs - a).norm());
        second = second.max((lhs - b).norm());
    }
    Ok(FtReport { samples: pts.len(), max_dev_first: first, max_dev_second: second })
}
