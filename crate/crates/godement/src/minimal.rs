//! The minimal case (n, r) = (0, 1): the U₁-period Ψ of a Godement section,
//! the ratio Γ_δ it defines and the resulting Rankin–Selberg gamma factor.

use lg_chars::{AddChar, EtaleChar, MultChar, PiChar};
use lg_padic::{EtaleAlgebra, PAdic};
use lg_par::Mode;
use lg_symbolic::LaurentRational;
use lg_tate::{canonical_test_function, gamma_wd, gamma_wd_pair, tate_integral, Domain, SchwartzFn, Term};
use num_complex::Complex64;

use crate::error::{GodementError, Result};
use crate::intertwine::unit_reps;
use crate::matrix::{h0, j01_field, j01_split, U2Element};
use crate::section::GodementSection;
use crate::shells::{agree, two_sided, weighted_sum, Ratio};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn minus_one(alg: &EtaleAlgebra) -> PAdic {
    alg.field().from_i64(-1)
}

fn field_char(tau: &EtaleChar) -> Result<&MultChar> {
    match tau {
        EtaleChar::Field(chi) => Ok(chi),
        EtaleChar::Split(..) => Err(GodementError::Shape("expected a character of a field E".into())),
    }
}

fn split_chars(tau: &EtaleChar) -> Result<(&MultChar, &MultChar)> {
    match tau {
        EtaleChar::Split(a, b) => Ok((a, b)),
        EtaleChar::Field(_) => Err(GodementError::Shape("expected a pair of characters of F".into())),
    }
}

/// Coset level for the E¹-sum: deep enough that η₁, τ and the action on φ
/// are constant on cosets of E¹ ∩ (1 + p_E^m).
pub fn e1_level(eta_depth: u32, sec: &GodementSection) -> u32 {
    let (fine, lo) = sec.phi().extent();
    let e = sec.alg().e() as i32;
    [1, eta_depth as i32, sec.tau().depth() as i32, e * (fine - lo)].into_iter().max().unwrap() as u32
}

fn field_period_at(eta1: &lg_chars::U1Char, sec: &GodementSection, m: u32, mode: Mode) -> Result<LaurentRational> {
    let alg = *sec.alg();
    let cosets = alg.e1_cosets(m)?;
    let w = Complex64::new(1.0 / cosets.len() as f64, 0.0);
    let items: Vec<Result<(Complex64, LaurentRational)>> = lg_par::map(mode, &cosets, |alpha| {
        let h = j01_field(&alg, alpha)?;
        Ok((w * eta1.eval(alpha)?, sec.core(&U2Element::Field(h))?))
    });
    weighted_sum(alg.field().q(), items.into_iter().collect::<Result<_>>()?)
}

/// Ψ(f) = ∫_{U₁} π(g) f(j^{0,1}(g)) dg, computed directly on the group: a
/// finite sum over E¹ cosets for a field, a shell sum over F^× when split.
pub fn period_direct(pi: &PiChar, sec: &GodementSection, mode: Mode) -> Result<LaurentRational> {
    let alg = *sec.alg();
    let q = alg.field().q();
    match pi {
        PiChar::Field(eta1) => {
            let m = e1_level(eta1.pullback().depth(), sec);
            let a = field_period_at(eta1, sec, m, mode)?;
            let b = field_period_at(eta1, sec, m + 1, mode)?;
            if !agree(&a, &b, 1e-8) {
                return Err(GodementError::UnstableLevel(m));
            }
            sec.finish(a)
        }
        PiChar::Split(eta) => {
            let f = alg.field();
            let (chi1, _) = split_chars(sec.tau())?;
            let chi0 = sec.chi0()?;
            let (fine, lo) = sec.phi().extent();
            let span = fine - lo;
            let r_up = eta.unif_value() * chi1.unif_value();
            let up = Ratio { c: r_up, m: 1 };
            let down = Ratio { c: chi0.unif_value() / r_up, m: 1 };
            let depth = eta.depth().max(chi1.depth()) as i32;
            let total = two_sided(q, -span - 1, span + 1, down, up, mode, |v| {
                let level = [1, depth, span - v.max(0)].into_iter().max().unwrap() as u32;
                let w = Complex64::new((q as f64).powi(-(level as i32)), 0.0);
                let mut items = Vec::new();
                for u in unit_reps(f.p(), level) {
                    let a = f.from_parts(v, u);
                    let h = j01_split(&f, &a)?;
                    items.push((w * eta.eval_f(&a)?, sec.core(&U2Element::Split(h))?));
                }
                weighted_sum(q, items)
            })?;
            sec.finish(total)
        }
    }
}

/// e(1 − q_E^{-1})/(1 − q^{-1}): the Jacobian relating d^×a on E^× to the
/// product of d^×t on F^× and the probability measure on E¹.
fn fibration_constant(alg: &EtaleAlgebra) -> f64 {
    let q = alg.field().q() as f64;
    let qe = alg.q_e() as f64;
    alg.e() as f64 * (1.0 - 1.0 / qe) / (1.0 - 1.0 / q)
}

/// The same period through Tate integrals: Z_E(Φ, ηχ) over E^× for a field,
/// a product of two Tate integrals over F^× per term of ρ(h₀)φ when split.
pub fn period_tate(pi: &PiChar, sec: &GodementSection) -> Result<LaurentRational> {
    let alg = *sec.alg();
    let f = alg.field();
    let q = f.q();
    let v = match pi {
        PiChar::Field(eta1) => {
            let chi = field_char(sec.tau())?;
            // Φ(z + δw) = φ(−Δw, z)
            let big = sec.phi().pullback_diag(&[1, 0], &[alg.delta_sq().neg(), f.one()])?;
            let z = tate_integral(&Domain::E(alg), &big, &eta1.pullback().mul(chi)?, 1.0)?;
            z.scale(Complex64::new(1.0 / fibration_constant(&alg), 0.0))
        }
        PiChar::Split(eta) => {
            let (chi1, chi2) = split_chars(sec.tau())?;
            let a = eta.mul(chi1)?;
            let b = eta.inv().mul(chi2)?;
            let moved = sec.phi().right_translate(&h0(&f)?)?;
            let dom = Domain::F(f);
            let mut acc = LaurentRational::zero(q);
            for t in moved.terms() {
                let coord = |i: usize| {
                    SchwartzFn::from_terms(
                        f,
                        1,
                        vec![Term { coeff: one(), center: vec![t.center[i]], level: vec![t.level[i]], phase: vec![t.phase[i]] }],
                    )
                };
                let za = tate_integral(&dom, &coord(1)?, &a, 1.0)?;
                let zb = tate_integral(&dom, &coord(0)?, &b, 1.0)?;
                acc = acc.add(&za.mul(&zb)?.scale(t.coeff))?;
            }
            acc.scale(a.eval_f(&minus_one(&alg))?)
        }
    };
    sec.finish(v)
}

/// Γ_δ with the periods of both sections.
#[derive(Clone, Debug)]
pub struct GammaDelta {
    pub gamma: LaurentRational,
    pub period: LaurentRational,
    pub dual_period: LaurentRational,
}

/// Γ_δ(s, π × τ, ψ) = Ψ(A_{ψ,δ} f) / Ψ(f).
pub fn gamma_delta(pi: &PiChar, sec: &GodementSection, psi: &AddChar, mode: Mode) -> Result<GammaDelta> {
    let period = period_direct(pi, sec, mode)?;
    if period.is_zero() {
        return Err(GodementError::ZeroDenominator);
    }
    let dual_period = period_direct(pi, &sec.dual(psi)?, mode)?;
    Ok(GammaDelta { gamma: dual_period.div(&period)?, period, dual_period })
}

/// The value Γ_δ must take: η₁(−1)χ(δ)|δ|_E^{s−1/2}·γ_E(s, ηχ, ψ_E) for a
/// field, ηχ₂(−1)·γ(s, ηχ₁, ψ)γ(s, η^{-1}χ₂, ψ) when split.
pub fn expected_gamma_delta(pi: &PiChar, tau: &EtaleChar, psi: &AddChar, alg: &EtaleAlgebra) -> Result<LaurentRational> {
    let q = alg.field().q();
    match pi {
        PiChar::Field(eta1) => {
            let chi = field_char(tau)?;
            let vd = alg.delta_sq().val();
            let c = eta1.at_minus_one()? * chi.eval_e(&alg.delta())? * (q as f64).powf(vd as f64 / 2.0);
            let g = gamma_wd(&eta1.pullback().mul(chi)?, psi)?;
            Ok(g.mul(&LaurentRational::monomial(q, c, vd))?)
        }
        PiChar::Split(eta) => {
            let (chi1, chi2) = split_chars(tau)?;
            let m1 = minus_one(alg);
            let g = gamma_wd(&eta.mul(chi1)?, psi)?.mul(&gamma_wd(&eta.inv().mul(chi2)?, psi)?)?;
            Ok(g.scale(eta.eval_f(&m1)? * chi2.eval_f(&m1)?))
        }
    }
}

/// γ^RS = ω_π(−1)ω_τ(δ)^{-1}|δ|_E^{-(s−1/2)}Γ_δ.
pub fn gamma_rs_from_delta(pi: &PiChar, tau: &EtaleChar, alg: &EtaleAlgebra, gamma: &LaurentRational) -> Result<LaurentRational> {
    let q = alg.field().q();
    let m1 = minus_one(alg);
    let (c, shift) = match (pi, tau) {
        (PiChar::Field(eta1), EtaleChar::Field(chi)) => {
            let vd = alg.delta_sq().val();
            let c = eta1.at_minus_one()? / chi.eval_e(&alg.delta())? * (q as f64).powf(-vd as f64 / 2.0);
            (c, -vd)
        }
        (PiChar::Split(eta), EtaleChar::Split(_, chi2)) => (eta.eval_f(&m1)? / chi2.eval_f(&m1)?, 0),
        _ => return Err(GodementError::Shape("π and τ belong to different cases".into())),
    };
    Ok(gamma.mul_monomial(c, shift))
}

/// γ^RS together with its ratio to the Weil–Deligne product.
#[derive(Clone, Debug)]
pub struct RsComparison {
    pub gamma_rs: LaurentRational,
    pub gamma_wd: LaurentRational,
    pub ratio: LaurentRational,
}

pub fn compare_with_wd(
    pi: &PiChar,
    tau: &EtaleChar,
    psi: &AddChar,
    alg: &EtaleAlgebra,
    gamma: &LaurentRational,
) -> Result<RsComparison> {
    let gamma_rs = gamma_rs_from_delta(pi, tau, alg, gamma)?;
    let wd = gamma_wd_pair(pi, tau, psi, alg)?;
    let ratio = gamma_rs.div(&wd)?;
    Ok(RsComparison { gamma_rs, gamma_wd: wd, ratio })
}

/// ηχ on E^× for a field, and (ηχ₁, η^{-1}χ₂) when split.
fn twisted(pi: &PiChar, tau: &EtaleChar) -> Result<Vec<MultChar>> {
    match pi {
        PiChar::Field(eta1) => Ok(vec![eta1.pullback().mul(field_char(tau)?)?]),
        PiChar::Split(eta) => {
            let (c1, c2) = split_chars(tau)?;
            Ok(vec![eta.mul(c1)?, eta.inv().mul(c2)?])
        }
    }
}

/// Turns a function on E (coordinates z + δw) into φ on F² with
/// Φ(z + δw) = φ(−Δw, z).
pub fn from_e_coordinates(alg: &EtaleAlgebra, big: &SchwartzFn) -> Result<SchwartzFn> {
    let f = alg.field();
    let s = f.one().neg().div(&alg.delta_sq())?;
    Ok(big.pullback_diag(&[1, 0], &[f.one(), s])?)
}

/// Candidate test functions, the first being the canonical one: φ with
/// Φ = 1_{1+p_E^d} (or 1_{O_E}) for a field, ρ(h₀^{-1})(φ₁ ⊗ φ₂) built from
/// the canonical functions of η^{-1}χ₂ and ηχ₁ when split.
pub fn test_functions(pi: &PiChar, tau: &EtaleChar, alg: &EtaleAlgebra) -> Result<Vec<SchwartzFn>> {
    let f = alg.field();
    let chars = twisted(pi, tau)?;
    let half = Complex64::new(0.5, 0.0);
    let mut out = Vec::new();
    if alg.is_field() {
        let dom = Domain::E(*alg);
        let d = chars[0].depth();
        let lv = dom.levels(d.max(1) as i32);
        let ball = |a: i64, b: i64, lv: [i32; 2]| SchwartzFn::indicator(f, vec![f.from_i64(a), f.from_i64(b)], lv.to_vec());
        let canonical = canonical_test_function(&dom, d);
        let lv2 = dom.levels(d.max(1) as i32 + 1);
        let bigs = vec![
            canonical.clone(),
            ball(2, 0, lv)?,
            canonical.add(&ball(1, 1, lv2)?.scale(half))?.add(&SchwartzFn::indicator(f, vec![f.zero(), f.zero()], dom.levels(1).to_vec())?.scale(Complex64::new(0.25, 0.0)))?,
            ball(2, 0, lv)?.add(&ball(1, 0, lv2)?.scale(Complex64::new(0.0, 1.0)))?,
            canonical.scale(Complex64::new(0.0, 2.0)).add(&ball(0, 1, dom.levels(d as i32 + 2))?)?,
        ];
        for big in &bigs {
            out.push(from_e_coordinates(alg, big)?);
        }
    } else {
        let dom = Domain::F(f);
        let inv_h0 = [[f.one(), f.one()], [f.one(), f.one().neg()]];
        let c1 = canonical_test_function(&dom, chars[1].depth());
        let c2 = canonical_test_function(&dom, chars[0].depth());
        let lv = |d: u32| d.max(1) as i32;
        let s2 = SchwartzFn::indicator(f, vec![f.from_i64(2)], vec![lv(chars[0].depth())])?;
        let s1 = SchwartzFn::indicator(f, vec![f.from_i64(-1)], vec![lv(chars[1].depth())])?;
        let pairs = vec![(c1.clone(), c2.clone()), (s1.clone(), c2.clone()), (c1.clone(), s2.clone()), (s1, s2)];
        for (a, b) in &pairs {
            out.push(SchwartzFn::tensor(a, b)?.right_translate(&inv_h0)?);
        }
        let extra = SchwartzFn::indicator(f, vec![f.one(), f.from_i64(2)], vec![lv(chars[0].depth().max(chars[1].depth())); 2])?;
        out.insert(2, out[0].add(&extra.scale(half))?);
        out.truncate(5);
    }
    Ok(out)
}

/// Γ_δ from the first `count` candidates with a non-vanishing period.
pub fn gamma_delta_over_functions(
    pi: &PiChar,
    tau: &EtaleChar,
    psi: &AddChar,
    alg: &EtaleAlgebra,
    count: usize,
    mode: Mode,
) -> Result<Vec<GammaDelta>> {
    let mut out = Vec::new();
    for phi in test_functions(pi, tau, alg)? {
        let sec = GodementSection::new(*alg, phi, tau.clone())?;
        match gamma_delta(pi, &sec, psi, mode) {
            Ok(g) => out.push(g),
            Err(GodementError::ZeroDenominator) => continue,
            Err(e) => return Err(e),
        }
        if out.len() == count {
            break;
        }
    }
    Ok(out)
}
