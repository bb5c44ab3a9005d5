//! GL(1) gamma factors over F and over each quadratic field E: independence
//! of the test function, duality and the sign law.

use lg_chars::{AddChar, Base, MultChar};
use lg_symbolic::{lr_deviation, LaurentRational};
use lg_tate::{gamma_wd, gamma_with, Domain, SchwartzFn, TateError};
use num_complex::Complex64;

use super::{idx, rng_for, Job};
use crate::config::{Run, SchwartzSpec};
use crate::report::Case;

/// A base of the suite: its name in ids, the Tate domain and the characters.
pub struct TateBase {
    pub name: &'static str,
    pub dom: Domain,
    pub chars: Vec<MultChar>,
}

/// Listed characters first, then seeded draws with depths cycling through
/// 0..=max_depth.
pub fn bases(run: &Run) -> Vec<TateBase> {
    let cs = &run.config.characters;
    let mut targets = vec![("F", Base::F(run.field), "F")];
    targets.extend(run.fields().map(|a| (a.name, Base::E(a.alg), "E")));
    targets
        .into_iter()
        .map(|(name, base, spec_base)| {
            let alg = match base {
                Base::E(e) => e,
                Base::F(_) => lg_padic::EtaleAlgebra::split(run.field),
            };
            let mut chars: Vec<MultChar> =
                cs.mult.iter().filter(|s| s.base == spec_base).map(|s| s.build(&alg).expect("validated")).collect();
            let mut rng = rng_for(run.config.seed, &format!("tate|{name}"));
            for i in 0..cs.per_base {
                let depth = (i as u32) % (cs.max_depth + 1);
                chars.push(MultChar::random(base, depth, 4, &mut rng).expect("depth within precision"));
            }
            TateBase { name, dom: Domain::of_base(base), chars }
        })
        .collect()
}

fn one(q: u64) -> LaurentRational {
    LaurentRational::constant(q, Complex64::new(1.0, 0.0))
}

/// γ with every basis function; degenerate functions (Z(s, χ, φ) = 0) are
/// skipped and counted.
fn phi_independence(id: String, dom: &Domain, chi: &MultChar, psi: &AddChar, basis: &[SchwartzFn], tol: f64) -> Case {
    let kind = "tate/phi-independence";
    let mut gammas = Vec::new();
    for phi in basis {
        match gamma_with(dom, chi, psi, phi) {
            Ok(g) => gammas.push(g),
            Err(TateError::DegenerateTestFunction) => {}
            Err(e) => return Case::error(id, kind, e),
        }
    }
    let used = format!("used {} of {} test functions", gammas.len(), basis.len());
    if gammas.len() < 2 {
        return Case::error(id, kind, used);
    }
    let worst = gammas[1..]
        .iter()
        .max_by(|a, b| lr_deviation(&gammas[0], a).total_cmp(&lr_deviation(&gammas[0], b)))
        .expect("at least two");
    let mut case = Case::compare(id, kind, &gammas[0], worst, tol);
    for g in &gammas[1..] {
        if !lg_symbolic::lr_equal(&gammas[0], g, tol) {
            case = case.failing(used.clone());
        }
    }
    case.with_detail(used)
}

fn laws(name: &str, i: usize, chi: &MultChar, psi: &AddChar, tol: f64) -> Vec<Case> {
    let q = psi.field().q();
    let did = format!("tate/duality/{name}/{}", idx(i));
    let sid = format!("tate/sign/{name}/{}", idx(i));
    let g = match gamma_wd(chi, psi) {
        Ok(g) => g,
        Err(e) => return vec![Case::error(did, "tate/duality", &e), Case::error(sid, "tate/sign", e)],
    };
    let duality = gamma_wd(&chi.inv(), &psi.inverse())
        .and_then(|d| Ok(d.reflect()?))
        .and_then(|d| Ok(g.mul(&d)?))
        .map(|prod| Case::compare(did.clone(), "tate/duality", &prod, &one(q), tol))
        .unwrap_or_else(|e| Case::error(did, "tate/duality", e));
    let sign = chi
        .at_minus_one()
        .map_err(TateError::from)
        .and_then(|s| Ok((gamma_wd(chi, &psi.inverse())?, g.scale(s))))
        .map(|(l, r)| Case::compare(sid.clone(), "tate/sign", &l, &r, tol))
        .unwrap_or_else(|e| Case::error(sid, "tate/sign", e));
    vec![duality, sign]
}

/// Resolves the basis of a domain at a character depth.
pub fn resolve_basis(specs: &[&SchwartzSpec], dom: &Domain, depth: u32) -> Vec<SchwartzFn> {
    specs.iter().map(|s| s.resolve(dom, depth).expect("validated")).collect()
}

pub fn jobs(run: &Run) -> Vec<Job<'_>> {
    let mut out: Vec<Job> = Vec::new();
    for b in bases(run) {
        let specs = run.basis(if matches!(b.dom, Domain::F(_)) { "F" } else { "E" });
        for (i, chi) in b.chars.into_iter().enumerate() {
            let specs = specs.clone();
            let (name, dom) = (b.name, b.dom);
            out.push(Box::new(move || {
                let tol = run.config.tol;
                let basis = resolve_basis(&specs, &dom, chi.depth());
                let mut cases =
                    vec![phi_independence(format!("tate/phi-independence/{name}/{}", idx(i)), &dom, &chi, &run.psi, &basis, tol)];
                cases.extend(laws(name, i, &chi, &run.psi, tol));
                cases
            }));
        }
    }
    out
}
