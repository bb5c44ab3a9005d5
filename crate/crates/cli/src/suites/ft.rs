//! Pointwise checks of the field and split Fourier lemmas on the basis
//! functions, resolved at depth 0.

use lg_godement::{verify_ft_field, verify_ft_split};
use lg_tate::Domain;

use super::{idx, Job};
use crate::config::Run;
use crate::report::{Case, Side};

pub const SAMPLES: usize = 60;

pub fn jobs(run: &Run) -> Vec<Job<'_>> {
    let mut out: Vec<Job> = Vec::new();
    let e_specs = run.basis("E");
    for a in run.fields() {
        let (name, alg) = (a.name, a.alg);
        for (i, spec) in e_specs.iter().enumerate() {
            let spec = (*spec).clone();
            out.push(Box::new(move || {
                let id = format!("ft-lemmas/field/{name}/{}", idx(i));
                let big = spec.resolve(&Domain::E(alg), 0).expect("validated");
                let seed = run.config.seed.wrapping_add(i as u64);
                vec![match verify_ft_field(&alg, &big, &run.psi, SAMPLES, seed) {
                    Ok(r) => Case::deviation(
                        id,
                        "ft-lemmas/field",
                        Side::Text(format!("{} sample points", r.samples)),
                        Side::Text("pointwise equality".into()),
                        r.max_dev_first,
                        run.config.tol,
                    ),
                    Err(e) => Case::error(id, "ft-lemmas/field", e),
                }]
            }));
        }
    }
    if run.splits().next().is_some() {
        let f_specs = run.basis("F");
        let dom = Domain::F(run.field);
        let n = f_specs.len();
        for i in 0..n {
            let (s1, s2) = (f_specs[i].clone(), f_specs[(i + 1) % n].clone());
            out.push(Box::new(move || {
                let id = format!("ft-lemmas/split/split/{}", idx(i));
                let (p1, p2) = (s1.resolve(&dom, 0).expect("validated"), s2.resolve(&dom, 0).expect("validated"));
                let seed = run.config.seed.wrapping_add(100 + i as u64);
                vec![match verify_ft_split(&p1, &p2, &run.psi, SAMPLES, seed) {
                    Ok(r) => Case::deviation(
                        id,
                        "ft-lemmas/split",
                        Side::Text(format!("{} sample points", r.samples)),
                        Side::Text("pointwise equality of all three forms".into()),
                        r.max_dev_first.max(r.max_dev_second),
                        run.config.tol,
                    ),
                    Err(e) => Case::error(id, "ft-lemmas/split", e),
                }]
            }));
        }
    }
    out
}
