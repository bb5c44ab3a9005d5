//! The normalization certificate of the intertwining operator on Godement
//! sections, for (τ, φ) pairs over every algebra of the run.

use lg_chars::EtaleChar;
use lg_godement::{normalization_certificate, GodementError, GodementSection};
use lg_par::Mode;
use lg_tate::Domain;

use super::{idx, rng_for, Job};
use crate::config::Run;
use crate::report::{Case, Side, Status};

const KIND: &str = "intertwine/normalization";

/// τ_0 trivial, then seeded draws with depths cycling through 0..=max_depth.
pub fn characters(run: &Run, name: &str, alg: lg_padic::EtaleAlgebra) -> Vec<EtaleChar> {
    let cs = &run.config.characters;
    let mut rng = rng_for(run.config.seed, &format!("intertwine|{name}"));
    let mut out = vec![EtaleChar::trivial(alg).expect("trivial character")];
    for i in 1..cs.certificates {
        let depth = (i as u32) % (cs.max_depth + 1);
        out.push(EtaleChar::random(alg, depth, 4, &mut rng).expect("depth within precision"));
    }
    out.truncate(cs.certificates);
    out
}

pub fn jobs(run: &Run, mode: Mode) -> Vec<Job<'_>> {
    let specs = run.basis("E");
    let mut out: Vec<Job> = Vec::new();
    for a in &run.algebras {
        let (name, alg) = (a.name, a.alg);
        for (i, tau) in characters(run, name, alg).into_iter().enumerate() {
            let spec = specs[i % specs.len()].clone();
            out.push(Box::new(move || {
                let id = format!("{KIND}/{name}/{}", idx(i));
                let phi = spec.resolve(&Domain::E(alg), tau.depth()).expect("validated");
                let sec = match GodementSection::new(alg, phi, tau.clone()) {
                    Ok(s) => s,
                    Err(e) => return vec![Case::error(id, KIND, e)],
                };
                let case = match normalization_certificate(&sec, &run.psi, run.config.tol, mode) {
                    Ok(cert) => {
                        let mut c = Case::compare(id, KIND, &cert.lhs, &cert.rhs, run.config.tol);
                        // the certificate treats round-off sized values as zero
                        c.status = Status::Pass;
                        c.max_dev = cert.deviation.is_finite().then_some(cert.deviation);
                        if cert.lhs.is_zero() && cert.rhs.is_zero() {
                            c = c.with_detail("both sides vanish");
                        }
                        c
                    }
                    Err(GodementError::NormalizationMismatch(m)) => {
                        Case::deviation(id, KIND, Side::Text(m), Side::Text("equal value".into()), f64::INFINITY, 0.0)
                    }
                    Err(e) => Case::error(id, KIND, e),
                };
                vec![case]
            }));
        }
    }
    out
}
