//! The identity catalog: a manifest of entries, the parameter grid and a
//! runner that evaluates every applicable entry in both algebra semantics.

use lg_par::Mode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::identities::{builder, Checker, Params};
use crate::jacobian::{jacobian_builder, jacobian_exponent};
use crate::scalar::Alg;

const MANIFEST: &str = include_str!("catalog.toml");

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// Identities in the unitary groups.
    Unitary,
    /// Identities in GL over the algebra.
    General,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub id: String,
    pub section: String,
    pub anchor: String,
    pub builder: String,
    pub when: String,
    pub group: GroupKind,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct JacobianSpec {
    pub id: String,
    pub anchor: String,
    pub builder: String,
    pub when: String,
    /// The expected exponent: "0", "l" or "-l".
    pub expected: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub entry: Vec<EntrySpec>,
    pub jacobian: Vec<JacobianSpec>,
}

/// Parses the embedded manifest and checks that every builder and
/// condition resolves.
pub fn manifest() -> Result<Manifest> {
    let m: Manifest = toml::from_str(MANIFEST).map_err(|e| GroupError::Manifest(e.to_string()))?;
    let mut seen = std::collections::HashSet::new();
    for e in &m.entry {
        if builder(&e.builder).is_none() {
            return Err(GroupError::Manifest(format!("{}: unknown builder {}", e.id, e.builder)));
        }
        Condition::parse(&e.when)?;
        if !seen.insert(e.id.clone()) {
            return Err(GroupError::Manifest(format!("duplicate id {}", e.id)));
        }
    }
    for j in &m.jacobian {
        if jacobian_builder(&j.builder).is_none() {
            return Err(GroupError::Manifest(format!("{}: unknown builder {}", j.id, j.builder)));
        }
        Condition::parse(&j.when)?;
        expected_exponent(&j.expected, &Params { n: 0, r: 1, k: None, split: None })?;
        if !seen.insert(j.id.clone()) {
            return Err(GroupError::Manifest(format!("duplicate id {}", j.id)));
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Operand {
    Var(String),
    Int(i64),
}

/// A conjunction of comparisons between the grid variables n, r, k, r1, r2
/// and l = r − n − 1, e.g. "n<r, k>=1".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    atoms: Vec<(Operand, Op, Operand)>,
}

const VARS: [&str; 6] = ["n", "r", "k", "r1", "r2", "l"];

impl Condition {
    pub fn parse(s: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (op, sym) = [(Op::Le, "<="), (Op::Ge, ">="), (Op::Eq, "=="), (Op::Lt, "<"), (Op::Gt, ">")]
                .into_iter()
                .find(|(_, sym)| part.contains(sym))
                .ok_or_else(|| GroupError::Manifest(format!("no comparison in {part:?}")))?;
            let (a, b) = part.split_once(sym).expect("found above");
            atoms.push((operand(a.trim())?, op, operand(b.trim())?));
        }
        Ok(Self { atoms })
    }

    fn mentions(&self, var: &str) -> bool {
        self.atoms.iter().any(|(a, _, b)| *a == Operand::Var(var.into()) || *b == Operand::Var(var.into()))
    }

    pub fn uses_k(&self) -> bool {
        self.mentions("k")
    }

    pub fn uses_split(&self) -> bool {
        self.mentions("r1") || self.mentions("r2")
    }

    pub fn holds(&self, p: &Params) -> bool {
        self.atoms.iter().all(|(a, op, b)| match (value(a, p), value(b, p)) {
            (Some(x), Some(y)) => match op {
                Op::Lt => x < y,
                Op::Le => x <= y,
                Op::Gt => x > y,
                Op::Ge => x >= y,
                Op::Eq => x == y,
            },
            _ => false,
        })
    }
}

fn operand(s: &str) -> Result<Operand> {
    if let Ok(v) = s.parse::<i64>() {
        return Ok(Operand::Int(v));
    }
    if VARS.contains(&s) {
        Ok(Operand::Var(s.into()))
    } else {
        Err(GroupError::Manifest(format!("unknown variable {s:?}")))
    }
}

fn value(o: &Operand, p: &Params) -> Option<i64> {
    match o {
        Operand::Int(v) => Some(*v),
        Operand::Var(v) => match v.as_str() {
            "n" => Some(p.n as i64),
            "r" => Some(p.r as i64),
            "k" => p.k.map(|k| k as i64),
            "r1" => p.split.map(|s| s.0 as i64),
            "r2" => p.split.map(|s| s.1 as i64),
            "l" => p.l().map(|l| l as i64),
            _ => None,
        },
    }
}

fn expected_exponent(s: &str, p: &Params) -> Result<Option<i64>> {
    let l = p.l().map(|l| l as i64);
    match s.trim() {
        "0" => Ok(Some(0)),
        "l" => Ok(l),
        "-l" => Ok(l.map(|l| -l)),
        other => Err(GroupError::Manifest(format!("unknown exponent {other:?}"))),
    }
}

/// A grid point (n, r, k); `k = None` means every k in 1..=n, and
/// `split = None` every (r′, r″) with r′ + r″ = r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tuple {
    pub n: usize,
    pub r: usize,
    pub k: Option<usize>,
    #[serde(default)]
    pub split: Option<(usize, usize)>,
}

/// The standard grid of (n, r, k).
pub fn standard_tuples() -> Vec<Tuple> {
    let t = |n, r, k| Tuple { n, r, k, split: None };
    vec![t(1, 1, Some(1)), t(2, 1, Some(1)), t(2, 2, Some(1)), t(3, 2, Some(1)), t(1, 2, None), t(1, 3, None), t(2, 4, Some(1))]
}

/// The parameter points at which an entry with this condition is evaluated.
pub fn expand(cond: &Condition, tuples: &[Tuple]) -> Vec<Params> {
    let mut out = Vec::new();
    for t in tuples {
        let ks: Vec<Option<usize>> = if !cond.uses_k() {
            vec![None]
        } else if let Some(k) = t.k {
            vec![Some(k)]
        } else {
            (1..=t.n).map(Some).collect()
        };
        let splits: Vec<Option<(usize, usize)>> =
            match (cond.uses_split(), t.split) {
                (false, _) => vec![None],
                (true, Some(s)) => vec![Some(s)],
                (true, None) => (1..t.r).map(|r1| Some((r1, t.r - r1))).collect(),
            };
        for &k in &ks {
            for &split in &splits {
                let p = Params { n: t.n, r: t.r, k, split };
                if cond.holds(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CatalogOptions {
    pub tuples: Vec<Tuple>,
    pub trials: usize,
    pub algs: Vec<Alg>,
    pub mode: Mode,
    pub seed: u64,
    /// Only entries of these sections (all when `None`).
    pub sections: Option<Vec<String>>,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        Self { tuples: standard_tuples(), trials: 100, algs: vec![Alg::field2(), Alg::Split], mode: Mode::Parallel, seed: 0, sections: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EntryReport {
    pub id: String,
    pub section: String,
    pub anchor: String,
    pub semantics: String,
    pub group: GroupKind,
    pub params: String,
    pub trials: usize,
    pub passed: bool,
    pub empty_block: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct JacobianReport {
    pub id: String,
    pub anchor: String,
    pub semantics: String,
    pub params: String,
    pub expected: i64,
    pub observed: Option<i64>,
    pub trials: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

/// FNV-1a over the parts, so every (entry, point, semantics, trial) gets its
/// own reproducible stream.
pub fn trial_seed(seed: u64, id: &str, params: &Params, alg: Alg, trial: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let text = format!("{seed}|{id}|{params}|{}|{trial}", alg.name());
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn selected(section: &str, opts: &CatalogOptions) -> bool {
    opts.sections.as_ref().is_none_or(|s| s.iter().any(|x| x == section))
}

struct Job<'a> {
    spec: &'a EntrySpec,
    params: Params,
    alg: Alg,
}

/// Runs every applicable entry at every grid point in every semantics.
pub fn run_catalog(opts: &CatalogOptions) -> Result<Vec<EntryReport>> {
    let m = manifest()?;
    let mut jobs = Vec::new();
    for spec in m.entry.iter().filter(|e| selected(&e.section, opts)) {
        let cond = Condition::parse(&spec.when)?;
        for params in expand(&cond, &opts.tuples) {
            for &alg in &opts.algs {
                jobs.push(Job { spec, params, alg });
            }
        }
    }
    let trials = opts.trials.max(1);
    let outcomes = lg_par::map_range(opts.mode, jobs.len() * trials, |i| {
        let job = &jobs[i / trials];
        let t = i % trials;
        let f = builder(&job.spec.builder).expect("validated");
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed, &job.spec.id, &job.params, job.alg, t));
        let mut ck = Checker::new();
        let err = f(&job.params, job.alg, &mut rng, &mut ck).err();
        let failure = match err {
            Some(e) => Some(format!("trial {t}: {e}")),
            None => ck.failure().map(|f| format!("trial {t}: {f}")),
        };
        (ck.is_empty_block(), failure)
    });
    Ok(jobs
        .iter()
        .enumerate()
        .map(|(j, job)| {
            let slice = &outcomes[j * trials..(j + 1) * trials];
            let failure = slice.iter().find_map(|(_, f)| f.clone());
            EntryReport {
                id: job.spec.id.clone(),
                section: job.spec.section.clone(),
                anchor: job.spec.anchor.clone(),
                semantics: job.alg.name().into(),
                group: job.spec.group.clone(),
                params: job.params.to_string(),
                trials,
                passed: failure.is_none(),
                empty_block: slice.iter().any(|(e, _)| *e),
                failure,
            }
        })
        .collect())
}

/// Computes every configured Jacobian exponent and compares it with the
/// expected value.
pub fn run_jacobians(opts: &CatalogOptions) -> Result<Vec<JacobianReport>> {
    let m = manifest()?;
    let mut jobs = Vec::new();
    for spec in &m.jacobian {
        let cond = Condition::parse(&spec.when)?;
        for params in expand(&cond, &opts.tuples) {
            if let Some(expected) = expected_exponent(&spec.expected, &params)? {
                for &alg in &opts.algs {
                    jobs.push((spec, params, alg, expected));
                }
            }
        }
    }
    let trials = opts.trials.max(1);
    let outcomes = lg_par::map_range(opts.mode, jobs.len() * trials, |i| {
        let (spec, params, alg, _) = &jobs[i / trials];
        let t = i % trials;
        let f = jacobian_builder(&spec.builder).expect("validated");
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed, &spec.id, params, *alg, t));
        f(params, *alg, &mut rng).and_then(|case| jacobian_exponent(&case.sub, &case.g, &case.nu))
    });
    Ok(jobs
        .iter()
        .enumerate()
        .map(|(j, (spec, params, alg, expected))| {
            let slice = &outcomes[j * trials..(j + 1) * trials];
            let mut failure = None;
            let mut observed = None;
            for (t, o) in slice.iter().enumerate() {
                match o {
                    Ok(e) if *e == *expected => observed = observed.or(Some(*e)),
                    Ok(e) => {
                        failure.get_or_insert(format!("trial {t}: exponent {e}"));
                        observed = Some(*e);
                    }
                    Err(err) => {
                        failure.get_or_insert(format!("trial {t}: {err}"));
                    }
                }
            }
            JacobianReport {
                id: spec.id.clone(),
                anchor: spec.anchor.clone(),
                semantics: alg.name().into(),
                params: params.to_string(),
                expected: *expected,
                observed,
                trials,
                passed: failure.is_none(),
                failure,
            }
        })
        .collect())
}
