//! Langlands' λ_{E/F}(ψ) for each quadratic field of the run.

use lg_chars::omega_ef;
use lg_padic::EtaleAlgebra;
use lg_symbolic::LaurentRational;
use lg_tate::{lambda_ef, lambda_ratio};
use num_complex::Complex64;

use super::Job;
use crate::config::Run;
use crate::report::Case;

fn constant(q: u64, c: Complex64) -> LaurentRational {
    LaurentRational::constant(q, c)
}

fn cases(run: &Run, name: &str, alg: &EtaleAlgebra) -> Vec<Case> {
    let tol = run.config.tol;
    let psi = &run.psi;
    let f = run.field;
    let q = f.q();
    let mut out = Vec::new();
    let xid = format!("lambda/x-free/{name}");
    out.push(match lambda_ratio(alg, psi) {
        Ok(r) => match r.as_constant(tol) {
            Some(c) => Case::compare(xid, "lambda/x-free", &r, &constant(q, c), tol),
            None => Case::compare(xid, "lambda/x-free", &r, &r, tol).failing("the ratio depends on X"),
        },
        Err(e) => Case::error(xid, "lambda/x-free", e),
    });
    let lam = match lambda_ef(alg, psi) {
        Ok(l) => l,
        Err(e) => {
            out.push(Case::error(format!("lambda/modulus/{name}"), "lambda/modulus", e));
            return out;
        }
    };
    out.push(Case::compare(
        format!("lambda/modulus/{name}"),
        "lambda/modulus",
        &constant(q, Complex64::new(lam.norm(), 0.0)),
        &constant(q, Complex64::new(1.0, 0.0)),
        tol,
    ));
    let twists = [("uniformizer", f.uniformizer()), ("nonresidue", f.from_i64(f.smallest_nonresidue() as i64))];
    for (label, a) in twists {
        let id = format!("lambda/twist/{name}/{label}");
        let case = psi
            .twist(&a)
            .map_err(lg_tate::TateError::from)
            .and_then(|pa| lambda_ef(alg, &pa))
            .and_then(|twisted| Ok((twisted / lam, omega_ef(alg, &a)? as f64)))
            .map(|(ratio, w)| Case::compare(id.clone(), "lambda/twist", &constant(q, ratio), &constant(q, Complex64::new(w, 0.0)), tol))
            .unwrap_or_else(|e| Case::error(id, "lambda/twist", e));
        out.push(case);
    }
    out
}

pub fn jobs(run: &Run) -> Vec<Job<'_>> {
    run.fields()
        .map(|a| {
            let (name, alg) = (a.name, a.alg);
            Box::new(move || cases(run, name, &alg)) as Job
        })
        .collect()
}
