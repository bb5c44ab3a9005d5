use lg_chars::{AddChar, Base, MultChar};
use lg_padic::{EtaleAlgebra, EtaleKind, PAdic, PAdicField};
use lg_symbolic::{LaurentPoly, LaurentRational};
use num_complex::Complex64;

use crate::error::{Result, TateError};
use crate::schwartz::{SchwartzFn, Term};

/// The multiplicative group being integrated over: F^× (functions on F) or
/// E^× for a quadratic field E (functions on F² in coordinates a + bδ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    F(PAdicField),
    E(EtaleAlgebra),
}

impl Domain {
    pub fn of_base(base: Base) -> Self {
        match base {
            Base::F(f) => Domain::F(f),
            Base::E(e) => Domain::E(e),
        }
    }

    pub fn field(&self) -> PAdicField {
        match self {
            Domain::F(f) => *f,
            Domain::E(e) => e.field(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::F(_) => 1,
            Domain::E(_) => 2,
        }
    }

    /// Residue degree: |ϖ|^s = X^f.
    pub fn f(&self) -> i32 {
        match self {
            Domain::F(_) => 1,
            Domain::E(e) => e.f() as i32,
        }
    }

    pub fn q_dom(&self) -> u64 {
        match self {
            Domain::F(f) => f.q(),
            Domain::E(e) => e.q_e(),
        }
    }

    /// Coordinate levels of p^d (resp. p_E^d) for any integer d.
    pub fn levels(&self, d: i32) -> [i32; 2] {
        match self {
            Domain::F(_) => [d, i32::MIN],
            Domain::E(e) => match e.kind() {
                EtaleKind::Ramified => [(d + 1).div_euclid(2), d.div_euclid(2)],
                _ => [d, d],
            },
        }
    }

    /// Largest valuation (of the domain) of an element whose coordinate `i`
    /// has exact valuation `v`.
    fn max_val_with_coord(&self, i: usize, v: i32) -> i32 {
        match self {
            Domain::F(_) => v,
            Domain::E(e) => match e.kind() {
                EtaleKind::Ramified => 2 * v + i as i32,
                _ => v,
            },
        }
    }

    /// Smallest valuation of an element whose coordinates have valuations ≥ m.
    fn min_val_from_coords(&self, m: &[i32]) -> i32 {
        match self {
            Domain::F(_) => m[0],
            Domain::E(e) => match e.kind() {
                EtaleKind::Ramified => (2 * m[0]).min(2 * m[1] + 1),
                _ => m[0].min(m[1]),
            },
        }
    }

    fn unit_keys(&self, level: u32) -> Vec<u64> {
        match self {
            Domain::F(f) => {
                let p = f.p();
                (1..p.pow(level)).filter(|k| k % p != 0).collect()
            }
            Domain::E(e) => e.unit_keys(level),
        }
    }

    /// Coordinates of ϖ^v·u for the unit class `key` at `level`.
    fn point(&self, v: i32, key: u64, level: u32) -> Result<Vec<PAdic>> {
        match self {
            Domain::F(f) => Ok(vec![f.from_parts(v, key)]),
            Domain::E(e) => {
                let z = e.mul(&e.uniformizer_pow(v)?, &e.from_key(key, level));
                Ok(vec![z.a, z.b])
            }
        }
    }

    /// vol(O) (resp. vol(O_E)) for the measure self-dual with respect to ψ
    /// (resp. ψ_E = ψ∘Tr).
    pub fn self_dual_volume(&self, psi: &AddChar) -> f64 {
        let q = self.field().q() as f64;
        match self {
            Domain::F(_) => psi.self_dual_volume(),
            Domain::E(e) => q.powf(psi.conductor() as f64 - e.delta_sq().val() as f64 / 2.0),
        }
    }
}

/// Shell bounds of a Schwartz function: the integrand vanishes on shells
/// below `lo`, and from shell `tail` on it equals φ(0) on every shell.
pub(crate) fn shell_bounds(dom: &Domain, phi: &SchwartzFn) -> (i32, i32) {
    let n = dom.dim();
    let mut lo = i32::MAX;
    let mut tail = i32::MIN;
    for t in phi.terms() {
        let m: Vec<i32> = (0..n).map(|i| t.center[i].val().min(t.level[i])).collect();
        lo = lo.min(dom.min_val_from_coords(&m));
        if t.contains_zero() {
            let mut need = lo;
            loop {
                let lv = dom.levels(need);
                let ok = (0..n).all(|i| {
                    lv[i] >= t.level[i] && (t.phase[i].is_zero() || lv[i] >= -t.phase[i].val())
                });
                if ok {
                    break;
                }
                need += 1;
            }
            tail = tail.max(need);
        } else {
            let i = (0..n).find(|&i| t.center[i].val() < t.level[i]).unwrap();
            tail = tail.max(dom.max_val_with_coord(i, t.center[i].val()) + 1);
        }
    }
    if lo == i32::MAX {
        return (0, 0);
    }
    (lo, tail.max(lo))
}

/// Smallest unit level L ≥ max(depth, 1) at which ϖ^v(u + p^L) lies inside
/// every box and phase period.
pub(crate) fn shell_level(dom: &Domain, terms: &[Term], depth: u32, v: i32) -> u32 {
    let n = dom.dim();
    let mut l = depth.max(1);
    loop {
        let lv = dom.levels(v + l as i32);
        let ok = terms.iter().all(|t| {
            (0..n).all(|i| lv[i] >= t.level[i] && (t.phase[i].is_zero() || lv[i] >= -t.phase[i].val()))
        });
        if ok {
            return l;
        }
        l += 1;
    }
}

/// ∫_{ϖ^v O^×} φ(t) χ(t) d^×t, without the X^{f v} factor.
pub fn shell_value(dom: &Domain, phi: &SchwartzFn, chi: &MultChar, vol_o: f64, v: i32) -> Result<Complex64> {
    let level = shell_level(dom, phi.terms(), chi.depth(), v);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for key in dom.unit_keys(level) {
        let x = dom.point(v, key, level)?;
        let val = phi.eval(&x)?;
        if val.norm() == 0.0 {
            continue;
        }
        acc += val * chi.eval_unit_key(key, level)?;
        mass += val.norm();
    }
    // character sums that cancel leave only round-off behind
    if acc.norm() <= 1e-12 * mass {
        acc = Complex64::new(0.0, 0.0);
    }
    let q = dom.q_dom() as f64;
    Ok(acc * chi.unif_value().powi(v) * vol_o * q.powi(-(level as i32)))
}

/// Z(s, χ, φ) = ∫ φ(t) χ(t) |t|^s d^×t over F^× or E^×, as a rational
/// function of X = q^{-s} (|ϖ_E|_E^s = X^f), with d^×t = dt/|t| and dt
/// giving O (or O_E) volume `vol_o`.
pub fn tate_integral(dom: &Domain, phi: &SchwartzFn, chi: &MultChar, vol_o: f64) -> Result<LaurentRational> {
    if phi.dim() != dom.dim() {
        return Err(TateError::Shape("test function and domain differ in dimension".into()));
    }
    if Domain::of_base(chi.base()) != *dom {
        return Err(TateError::Shape("character and domain differ".into()));
    }
    let q = dom.field().q();
    let f = dom.f();
    let (lo, tail) = shell_bounds(dom, phi);
    let mut terms = Vec::new();
    for v in lo..tail {
        terms.push((f * v, shell_value(dom, phi, chi, vol_o, v)?));
    }
    let zero_point = vec![dom.field().zero(); dom.dim()];
    let at_zero = phi.eval(&zero_point)?;
    let qd = dom.q_dom() as f64;
    let shell_const = if chi.is_unramified() { at_zero * vol_o * (1.0 - 1.0 / qd) } else { Complex64::new(0.0, 0.0) };
    let r = chi.unif_value();
    // the first shells of the tail must follow the predicted law exactly
    for v in tail..tail + 3 {
        let got = shell_value(dom, phi, chi, vol_o, v)?;
        let want = shell_const * r.powi(v);
        if (got - want).norm() > 1e-9 * (1.0 + want.norm()) {
            return Err(TateError::NonStabilizingShells(format!("shell {v}: {got} against predicted {want}")));
        }
    }
    let head = LaurentRational::from_poly(q, LaurentPoly::from_terms(&terms))?;
    if shell_const.norm() == 0.0 {
        return Ok(head);
    }
    let geo = LaurentRational::geometric(q, shell_const * r.powi(tail), r, f)?.mul_monomial(Complex64::new(1.0, 0.0), f * tail);
    Ok(head.add(&geo)?)
}

/// The canonical test function: 1_O for unramified χ, 1_{1 + p^d} for depth d.
pub fn canonical_test_function(dom: &Domain, depth: u32) -> SchwartzFn {
    let f = dom.field();
    match dom {
        Domain::F(_) => {
            if depth == 0 {
                SchwartzFn::unit_box(f, 1)
            } else {
                SchwartzFn::indicator(f, vec![f.one()], vec![depth as i32]).unwrap()
            }
        }
        Domain::E(_) => {
            if depth == 0 {
                SchwartzFn::unit_box(f, 2)
            } else {
                let lv = dom.levels(depth as i32);
                SchwartzFn::indicator(f, vec![f.one(), f.zero()], vec![lv[0], lv[1]]).unwrap()
            }
        }
    }
}

/// Fourier transform on F with respect to ψ, or on E with respect to ψ∘Tr.
pub fn fourier(dom: &Domain, phi: &SchwartzFn, psi: &AddChar) -> Result<SchwartzFn> {
    let c = psi.scale();
    match dom {
        Domain::F(_) => phi.fourier_diag(&[c], &[0]),
        Domain::E(e) => {
            // Tr(c·zy) = 2c(z₀y₀ + Δz₁y₁)
            let two_c = c.mul(&e.field().from_i64(2));
            phi.fourier_diag(&[two_c, two_c.mul(&e.delta_sq())], &[0, 1])
        }
    }
}

/// γ(s, χ, ψ) = Z(1 − s, χ^{-1}, φ̂) / Z(s, χ, φ) for a given test function.
pub fn gamma_with(dom: &Domain, chi: &MultChar, psi: &AddChar, phi: &SchwartzFn) -> Result<LaurentRational> {
    let vol = dom.self_dual_volume(psi);
    let z = tate_integral(dom, phi, chi, vol)?;
    let hat = fourier(dom, phi, psi)?;
    let zd = tate_integral(dom, &hat, &chi.inv(), vol)?.reflect()?;
    if z.is_zero() {
        return Err(TateError::DegenerateTestFunction);
    }
    Ok(zd.div(&z)?)
}

/// γ^WD(s, χ, ψ) over F, or γ^WD(s, χ, ψ_E) over E, from the canonical test function.
pub fn gamma_wd(chi: &MultChar, psi: &AddChar) -> Result<LaurentRational> {
    let dom = Domain::of_base(chi.base());
    gamma_with(&dom, chi, psi, &canonical_test_function(&dom, chi.depth()))
}
