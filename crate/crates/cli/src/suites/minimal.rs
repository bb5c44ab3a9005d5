//! The minimal case (n, r) = (0, 1): Γ_δ against its Weil–Deligne form,
//! its independence of φ, the two computations of the period Ψ, and the
//! comparison of γ^RS with γ^WD.

use lg_chars::{Base, EtaleChar, MultChar, PiChar, U1Char};
use lg_godement::{
    compare_with_wd, expected_gamma_delta, gamma_delta, period_tate, test_functions, GammaDelta, GodementError,
    GodementSection,
};
use lg_padic::EtaleAlgebra;
use lg_par::Mode;
use lg_symbolic::{lr_deviation, LaurentRational};
use lg_tate::lambda_ef;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use super::{idx, rng_for, Job};
use crate::config::Run;
use crate::report::Case;

/// Number of test functions Γ_δ is computed with.
pub const FUNCTIONS: usize = 3;

/// Whether ηχ (field) or one of ηχ₁, η^{-1}χ₂ (split) is ramified.
pub fn twist_ramified(pi: &PiChar, tau: &EtaleChar) -> bool {
    let depth = |a: &MultChar, b: &MultChar| a.mul(b).map(|c| c.depth()).unwrap_or(0);
    match (pi, tau) {
        (PiChar::Field(eta1), EtaleChar::Field(chi)) => depth(eta1.pullback(), chi) > 0,
        (PiChar::Split(eta), EtaleChar::Split(c1, c2)) => depth(eta, c1) > 0 || depth(&eta.inv(), c2) > 0,
        _ => false,
    }
}

fn random_pair(alg: EtaleAlgebra, depth: u32, rng: &mut ChaCha8Rng) -> (PiChar, EtaleChar) {
    let pi = if alg.is_field() {
        PiChar::Field(U1Char::random(alg, depth, rng).expect("depth within precision"))
    } else {
        PiChar::Split(MultChar::random(Base::F(alg.field()), depth, 4, rng).expect("depth within precision"))
    };
    (pi, EtaleChar::random(alg, depth, 4, rng).expect("depth within precision"))
}

fn trivial_pair(alg: EtaleAlgebra) -> (PiChar, EtaleChar) {
    let pi = if alg.is_field() {
        PiChar::Field(U1Char::trivial(alg).expect("trivial"))
    } else {
        PiChar::Split(MultChar::trivial(Base::F(alg.field())).expect("trivial"))
    };
    (pi, EtaleChar::trivial(alg).expect("trivial"))
}

/// The listed pairs for this algebra, then the all-trivial pair, one pair
/// with a ramified twist, and seeded draws with depths cycling through
/// 0..=pair_max_depth, up to pairs_per_algebra in total.
pub fn pairs(run: &Run, name: &str, alg: EtaleAlgebra) -> Vec<(PiChar, EtaleChar)> {
    let cs = &run.config.characters;
    let mut out: Vec<(PiChar, EtaleChar)> = cs
        .pairs
        .iter()
        .filter(|p| p.etale == name)
        .map(|p| (p.pi.build(&alg).expect("validated"), p.tau.build(&alg).expect("validated")))
        .collect();
    let mut rng = rng_for(run.config.seed, &format!("minimal|{name}"));
    if out.len() < cs.pairs_per_algebra {
        out.push(trivial_pair(alg));
    }
    if out.len() < cs.pairs_per_algebra && !out.iter().any(|(p, t)| twist_ramified(p, t)) {
        loop {
            let (p, t) = random_pair(alg, 1, &mut rng);
            if twist_ramified(&p, &t) {
                out.push((p, t));
                break;
            }
        }
    }
    let mut i = 0u32;
    while out.len() < cs.pairs_per_algebra {
        out.push(random_pair(alg, i % (cs.pair_max_depth + 1), &mut rng));
        i += 1;
    }
    out
}

struct Evaluated {
    sections: Vec<(GodementSection, GammaDelta)>,
}

fn evaluate(pi: &PiChar, tau: &EtaleChar, run: &Run, alg: &EtaleAlgebra, mode: Mode) -> Result<Evaluated, GodementError> {
    let mut sections = Vec::new();
    for phi in test_functions(pi, tau, alg)? {
        let sec = GodementSection::new(*alg, phi, tau.clone())?;
        match gamma_delta(pi, &sec, &run.psi, mode) {
            Ok(g) => sections.push((sec, g)),
            Err(GodementError::ZeroDenominator) => continue,
            Err(e) => return Err(e),
        }
        if sections.len() == FUNCTIONS {
            break;
        }
    }
    Ok(Evaluated { sections })
}

fn worst<'a>(base: &LaurentRational, others: impl Iterator<Item = &'a LaurentRational>) -> Option<&'a LaurentRational> {
    others.max_by(|a, b| lr_deviation(base, a).total_cmp(&lr_deviation(base, b)))
}

fn cases(run: &Run, suite: &str, name: &str, i: usize, pi: &PiChar, tau: &EtaleChar, alg: &EtaleAlgebra, mode: Mode) -> Vec<Case> {
    let tol = run.config.tol;
    let id = |check: &str| format!("{suite}/{check}/{name}/{}", idx(i));
    let kind = |check: &str| format!("{suite}/{check}");
    let checks = ["identity", "phi-independence", "two-route", "rs-vs-wd"];
    let ev = match evaluate(pi, tau, run, alg, mode) {
        Ok(ev) if !ev.sections.is_empty() => ev,
        Ok(_) => return checks.iter().map(|c| Case::error(id(c), &kind(c), "every test function has zero period")).collect(),
        Err(e) => return checks.iter().map(|c| Case::error(id(c), &kind(c), &e)).collect(),
    };
    let gamma = &ev.sections[0].1.gamma;
    let mut out = Vec::new();

    out.push(match expected_gamma_delta(pi, tau, &run.psi, alg) {
        Ok(want) => Case::compare(id("identity"), &kind("identity"), gamma, &want, tol),
        Err(e) => Case::error(id("identity"), &kind("identity"), e),
    });

    let used = format!("Γ_δ from {} test functions", ev.sections.len());
    let phi_case = match worst(gamma, ev.sections[1..].iter().map(|(_, g)| &g.gamma)) {
        Some(w) => {
            let mut c = Case::compare(id("phi-independence"), &kind("phi-independence"), gamma, w, tol);
            if ev.sections[1..].iter().any(|(_, g)| !lg_symbolic::lr_equal(gamma, &g.gamma, tol)) {
                c = c.failing(used.clone());
            }
            if ev.sections.len() < FUNCTIONS {
                c = c.failing(used.clone());
            }
            c.with_detail(used)
        }
        None => Case::error(id("phi-independence"), &kind("phi-independence"), used),
    };
    out.push(phi_case);

    let mut routes: Vec<(LaurentRational, LaurentRational)> = Vec::new();
    let mut route_err = None;
    for (sec, g) in &ev.sections {
        let dual = sec.dual(&run.psi);
        match (period_tate(pi, sec), dual.and_then(|d| period_tate(pi, &d))) {
            (Ok(a), Ok(b)) => {
                routes.push((g.period.clone(), a));
                routes.push((g.dual_period.clone(), b));
            }
            (Err(e), _) | (_, Err(e)) => route_err = Some(e),
        }
    }
    out.push(match route_err {
        Some(e) => Case::error(id("two-route"), &kind("two-route"), e),
        None => {
            let (direct, tate) = routes
                .iter()
                .max_by(|a, b| lr_deviation(&a.0, &a.1).total_cmp(&lr_deviation(&b.0, &b.1)))
                .expect("at least one section");
            let mut c = Case::compare(id("two-route"), &kind("two-route"), direct, tate, tol);
            if routes.iter().any(|(a, b)| !lg_symbolic::lr_equal(a, b, tol)) {
                c = c.failing("a period differs between the two routes");
            }
            c.with_detail(format!("{} periods compared", routes.len()))
        }
    });

    let expected_ratio = if alg.is_field() { lambda_ef(alg, &run.psi).map(|l| 1.0 / l) } else { Ok(Complex64::new(1.0, 0.0)) };
    out.push(match (compare_with_wd(pi, tau, &run.psi, alg, gamma), expected_ratio) {
        (Ok(cmp), Ok(c)) => Case::compare(id("rs-vs-wd"), &kind("rs-vs-wd"), &cmp.gamma_rs, &cmp.gamma_wd.scale(c), tol)
            .with_detail(format!("γ^RS/γ^WD = {}", cmp.ratio)),
        (Err(e), _) => Case::error(id("rs-vs-wd"), &kind("rs-vs-wd"), e),
        (_, Err(e)) => Case::error(id("rs-vs-wd"), &kind("rs-vs-wd"), e),
    });
    out
}

pub fn jobs(run: &Run, field: bool, mode: Mode) -> Vec<Job<'_>> {
    let suite = if field { "minimal-field" } else { "minimal-split" };
    let algebras: Vec<_> = if field { run.fields().copied().collect() } else { run.splits().copied().collect() };
    let mut out: Vec<Job> = Vec::new();
    for a in algebras {
        let (name, alg) = (a.name, a.alg);
        for (i, (pi, tau)) in pairs(run, name, alg).into_iter().enumerate() {
            out.push(Box::new(move || cases(run, suite, name, i, &pi, &tau, &alg, mode)));
        }
    }
    out
}
