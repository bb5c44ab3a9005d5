use lg_chars::{AddChar, EtaleChar};
use lg_padic::PAdic;
use lg_par::Mode;
use lg_symbolic::{lr_deviation, LaurentRational};
use lg_tate::{gamma_wd, SchwartzFn};
use num_complex::Complex64;

use crate::error::{GodementError, Result};
use crate::matrix::{mul_e, mul_f, unipotent_e, unipotent_f, weyl_e, weyl_f, U2Element};
use crate::section::GodementSection;
use crate::shells::{agree, two_sided, weighted_sum, Ratio};

/// Per-coordinate (finest level, lowest valuation) of a function on F².
pub(crate) fn coord_extent(phi: &SchwartzFn, i: usize) -> (i32, i32) {
    let mut fine = i32::MIN;
    let mut low = i32::MAX;
    for t in phi.terms() {
        fine = fine.max(t.level[i]);
        if !t.phase[i].is_zero() {
            fine = fine.max(-t.phase[i].val());
        }
        low = low.min(t.center[i].val().min(t.level[i]));
    }
    (fine, low)
}

/// Units of O/p^L as integers prime to p.
pub(crate) fn unit_reps(p: u64, level: u32) -> Vec<u64> {
    (1..p.pow(level)).filter(|k| k % p != 0).collect()
}

fn v_delta(sec: &GodementSection) -> i32 {
    sec.alg().delta_sq().val()
}

/// w·u_x, with u_x = [[1, δx], [0, 1]] for a field and [[1, x], [0, 1]] for F × F.
fn weyl_times_unipotent(sec: &GodementSection, x: &PAdic) -> U2Element {
    let alg = sec.alg();
    if alg.is_field() {
        U2Element::Field(mul_e(alg, &weyl_e(alg), &unipotent_e(alg, x)))
    } else {
        let f = alg.field();
        U2Element::Split(mul_f(&weyl_f(&f), &unipotent_f(&f, x)))
    }
}

/// A(w, τ, s)f(I) = |Δ|^{1/2} ∫_F f(w·u_x) dx with dx self-dual for ψ₂, by
/// summing x over valuation shells; small x follow f(w), large x a
/// geometric law in X².
pub fn intertwine_at_identity(sec: &GodementSection, psi: &AddChar, mode: Mode) -> Result<LaurentRational> {
    let f = sec.alg().field();
    let q = f.q();
    let qf = q as f64;
    let (f0, l0) = coord_extent(sec.phi(), 0);
    let (f1, l1) = coord_extent(sec.phi(), 1);
    let (fine, lo) = (f0.max(f1), l0.min(l1));
    let vd = v_delta(sec);
    let vol2 = psi.psi2().self_dual_volume();
    let chi0 = sec.chi0()?;
    let span = fine - lo;
    let down = Ratio { c: chi0.unif_value() * qf, m: 2 };
    let up = Ratio { c: Complex64::new(1.0 / qf, 0.0), m: 0 };
    let total = two_sided(q, -span - vd - 1, span + vd + 1, down, up, mode, |k| {
        let level = (span - k.max(0)).max(1) as u32;
        let w = vol2 * qf.powi(-k - level as i32);
        let mut items = Vec::new();
        for u in unit_reps(f.p(), level) {
            let x = f.from_parts(k, u);
            items.push((Complex64::new(w, 0.0), sec.core(&weyl_times_unipotent(sec, &x))?));
        }
        weighted_sum(q, items)
    })?;
    sec.finish(total.scale(Complex64::new(qf.powf(-vd as f64 / 2.0), 0.0)))
}

/// The closed form of A(w, τ, s)f at the identity:
/// χ^{-1}(−δ)|δ|_E^{1/2−s} γ(2s−1, χ₀, ψ₂)^{-1} f^{φ̂}_{1−s}(I; τ*) for a field and
/// χ₁(−1)^{-1} γ(2s−1, χ₁χ₂, ψ₂)^{-1} f^{φ̂}_{1−s}(I; τ*) for F × F.
pub fn intertwine_closed_form(sec: &GodementSection, psi: &AddChar) -> Result<LaurentRational> {
    let alg = *sec.alg();
    let f = alg.field();
    let q = f.q();
    let chi0 = sec.chi0()?;
    let g = gamma_wd(&chi0, &psi.psi2())?.subst_monomial(Complex64::new(q as f64, 0.0), 2)?;
    let plain = GodementSection::new(alg, sec.phi().clone(), sec.tau().clone())?;
    let dual = plain.dual(psi)?;
    let identity = if alg.is_field() {
        U2Element::Field([[alg.one(), alg.zero()], [alg.zero(), alg.one()]])
    } else {
        U2Element::Split([[f.one(), f.zero()], [f.zero(), f.one()]])
    };
    let at_i = dual.core(&identity)?.reflect()?;
    let lead = match sec.tau() {
        EtaleChar::Field(chi) => {
            let vd = v_delta(sec);
            let c = chi.eval_e(&alg.neg(&alg.delta()))?.inv() * (q as f64).powf(-vd as f64 / 2.0);
            LaurentRational::monomial(q, c, -vd)
        }
        EtaleChar::Split(chi1, _) => LaurentRational::constant(q, chi1.eval_f(&f.from_i64(-1))?.inv()),
    };
    sec.finish(lead.mul(&at_i)?.div(&g)?)
}

/// ∫_V f(w·u) ψ'^{-1}(u₁₂) du, with ψ'(x) = ψ_E(δx) for a field and ψ₂ for
/// F × F. The x-integral is done exactly for each t, leaving a finite sum over
/// t-shells: W = c·∫ H(t) χ₀(t)|t|^{2s} d^×t.
pub fn whittaker_integral(sec: &GodementSection, psi: &AddChar, mode: Mode) -> Result<LaurentRational> {
    let alg = *sec.alg();
    let f = alg.field();
    let q = f.q();
    let qf = q as f64;
    let phi = sec.phi();
    let c = psi.scale();
    let two_c = psi.psi2().scale();
    let chi0 = sec.chi0()?;
    let vd = v_delta(sec);
    let (fine0, lo0) = coord_extent(phi, 0);
    let (_, lo1) = coord_extent(phi, 1);
    let m1 = phi
        .terms()
        .iter()
        .map(|t| if t.phase[1].is_zero() { -t.level[1] } else { t.phase[1].val().min(-t.level[1]) })
        .min()
        .unwrap_or(0);
    let k_lo = lo0 - vd;
    let k_hi = c.val() - m1;
    let delta_sq = alg.delta_sq();
    let shells: Vec<i32> = (k_lo..=k_hi).collect();
    let per_shell = lg_par::map(mode, &shells, |&k| -> Result<LaurentRational> {
        let level = [1, chi0.depth() as i32, fine0 - k - vd, k - c.val() - lo1].into_iter().max().unwrap() as u32;
        let mut acc = Complex64::new(0.0, 0.0);
        for u in unit_reps(f.p(), level) {
            let t = f.from_parts(k, u);
            let ti = t.inv()?;
            let h = if alg.is_field() {
                // H(t) = |Δt|^{-1} ∫ φ(−Δt, y) ψ₂(y/t) dy
                let x0 = delta_sq.mul(&t).neg();
                qf.powi(vd + k) * phi.fourier_second_at(&x0, &two_c.mul(&ti), &two_c)?
            } else {
                // H(t) = |t|^{-1} ∫ φ(t, y) ψ₂(−y/t) dy
                qf.powi(k) * phi.fourier_second_at(&t, &two_c.mul(&ti).neg(), &two_c)?
            };
            if h.norm() != 0.0 {
                acc += h * chi0.eval_f(&t)?;
            }
        }
        Ok(LaurentRational::monomial(q, acc * qf.powi(-(level as i32)), 2 * k))
    });
    let mut sum = LaurentRational::zero(q);
    for s in per_shell {
        sum = sum.add(&s?)?;
    }
    let lead = match sec.tau() {
        EtaleChar::Field(chi) => LaurentRational::monomial(q, chi.eval_e(&alg.delta())?, vd),
        EtaleChar::Split(chi1, _) => LaurentRational::constant(q, chi1.eval_f(&f.from_i64(-1))?),
    };
    sec.finish(lead.mul(&sum)?)
}

/// The normalized operator: χ₀(−1)·f_{1−s}^{φ̂}(·; τ*).
pub fn intertwine_normalized(sec: &GodementSection, psi: &AddChar) -> Result<GodementSection> {
    sec.dual(psi)
}

/// Both sides of the normalization certificate and their deviation.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub lhs: LaurentRational,
    pub rhs: LaurentRational,
    pub deviation: f64,
}

/// Checks that the normalized operator preserves the ψ'-twisted unipotent
/// integral: W(f) = W(A_{ψ,δ} f).
pub fn normalization_certificate(sec: &GodementSection, psi: &AddChar, tol: f64, mode: Mode) -> Result<Certificate> {
    let lhs = whittaker_integral(sec, psi, mode)?;
    let rhs = whittaker_integral(&intertwine_normalized(sec, psi)?, psi, mode)?;
    let deviation = lr_deviation(&lhs, &rhs);
    if !agree(&lhs, &rhs, tol) {
        return Err(GodementError::NormalizationMismatch(format!("{lhs} against {rhs}")));
    }
    Ok(Certificate { lhs, rhs, deviation })
}
