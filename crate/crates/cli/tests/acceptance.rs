//! The acceptance grid: p ∈ {3, 5, 7} with split, unramified and ramified
//! algebras, character depths up to 2, tolerance 1e-9. Each criterion prints
//! one pass/fail line; the test fails if any criterion does.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use lg_chars::{EtaleChar, MultChar, PiChar};
use lg_cli::config::{self, Run};
use lg_cli::suites::{minimal, tate};
use lg_cli::{execute, prepare, Case, Mode, Report, Side};
use lg_groups::catalog::{manifest, standard_tuples};

const PRIMES: [u64; 3] = [3, 5, 7];
const ANALYTIC: [&str; 6] = ["tate", "lambda", "intertwine", "ft-lemmas", "minimal-field", "minimal-split"];
const BUDGET: Duration = Duration::from_secs(120);

struct Grid {
    runs: Vec<(Run, Report)>,
    groups: (Run, Report),
}

fn config_path(p: u64) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("configs/p{p}.toml"))
}

fn run(p: u64, suites: &[&str]) -> (Run, Report) {
    let cfg = config::load(&config_path(p)).expect("config loads");
    let only: Vec<String> = suites.iter().map(|s| s.to_string()).collect();
    let run = prepare(cfg, &only, None).expect("config validates");
    let rep = execute(&run, Mode::Parallel).expect("run completes");
    (run, rep)
}

fn grid() -> Grid {
    let runs = PRIMES.iter().map(|&p| run(p, &ANALYTIC)).collect();
    Grid { runs, groups: run(3, &["matrix-catalog", "jacobians"]) }
}

fn with_prefix<'a>(rep: &'a Report, prefix: &str) -> Vec<&'a Case> {
    rep.cases().filter(|c| c.id.starts_with(prefix)).collect()
}

fn all_pass(cases: &[&Case]) -> Result<(), String> {
    match cases.iter().find(|c| !c.passed()) {
        Some(c) => Err(format!("{} failed ({})", c.id, c.detail.as_deref().unwrap_or("no detail"))),
        None => Ok(()),
    }
}

/// Cases under `prefix`: at least `min`, all passing.
fn at_least(rep: &Report, prefix: &str, min: usize) -> Result<usize, String> {
    let cs = with_prefix(rep, prefix);
    if cs.len() < min {
        return Err(format!("{prefix}: {} cases, need {min}", cs.len()));
    }
    all_pass(&cs)?;
    Ok(cs.len())
}

fn p_of(run: &Run) -> u64 {
    run.config.field.p
}

fn algebra_names(run: &Run, fields_only: bool) -> Vec<&'static str> {
    run.algebras.iter().filter(|a| !fields_only || a.alg.is_field()).map(|a| a.name).collect()
}

fn tate_independence(g: &Grid) -> Result<String, String> {
    let mut total = 0;
    for (run, rep) in &g.runs {
        let bases = tate::bases(run);
        let chars: usize = bases.iter().map(|b| b.chars.len()).sum();
        if chars < 20 {
            return Err(format!("p={}: {chars} characters", p_of(run)));
        }
        for b in &bases {
            let depths: BTreeSet<u32> = b.chars.iter().map(MultChar::depth).collect();
            if !(0..=2).all(|d| depths.contains(&d)) {
                return Err(format!("p={} {}: depths {depths:?}", p_of(run), b.name));
            }
            let prefix = format!("tate/phi-independence/{}/", b.name);
            let cs = with_prefix(rep, &prefix);
            all_pass(&cs)?;
            if cs.len() != b.chars.len() {
                return Err(format!("{prefix}: {} cases for {} characters", cs.len(), b.chars.len()));
            }
            if let Some(c) = cs.iter().find(|c| c.detail.as_deref() != Some("used 5 of 5 test functions")) {
                return Err(format!("{}: {}", c.id, c.detail.as_deref().unwrap_or("")));
            }
        }
        total += chars;
    }
    Ok(format!("{total} characters, 5 test functions each"))
}

fn tate_law(g: &Grid, law: &str) -> Result<String, String> {
    let mut total = 0;
    for (run, rep) in &g.runs {
        total += at_least(rep, &format!("tate/{law}/"), 20).map_err(|e| format!("p={}: {e}", p_of(run)))?;
    }
    Ok(format!("{total} characters"))
}

fn lambda(g: &Grid) -> Result<String, String> {
    let mut total = 0;
    for (run, rep) in &g.runs {
        for e in algebra_names(run, true) {
            for check in ["x-free", "modulus", "twist/uniformizer", "twist/nonresidue"] {
                let (kind, rest) = check.split_once('/').map_or((check, None), |(k, r)| (k, Some(r)));
                let id = match rest {
                    Some(r) => format!("lambda/{kind}/{e}/{r}"),
                    None => format!("lambda/{kind}/{e}"),
                };
                let c = rep.case(&id).ok_or_else(|| format!("missing {id}"))?;
                all_pass(&[c])?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} checks over unramified and ramified E"))
}

fn normalization(g: &Grid) -> Result<String, String> {
    let mut total = 0;
    for (run, rep) in &g.runs {
        for a in algebra_names(run, false) {
            total += at_least(rep, &format!("intertwine/normalization/{a}/"), 5)?;
        }
    }
    Ok(format!("{total} certificates"))
}

fn ft_lemmas(g: &Grid) -> Result<String, String> {
    let mut total = 0;
    for (run, rep) in &g.runs {
        let mut prefixes: Vec<String> = algebra_names(run, true).iter().map(|e| format!("ft-lemmas/field/{e}/")).collect();
        prefixes.push("ft-lemmas/split/".into());
        for prefix in prefixes {
            let cs = with_prefix(rep, &prefix);
            if cs.is_empty() {
                return Err(format!("p={}: no {prefix} cases", p_of(run)));
            }
            all_pass(&cs)?;
            for c in cs {
                let samples = match &c.lhs {
                    Some(Side::Text(t)) => t.split_whitespace().next().and_then(|n| n.parse::<usize>().ok()),
                    _ => None,
                }
                .ok_or_else(|| format!("{}: no sample count", c.id))?;
                let dev = c.max_dev.ok_or_else(|| format!("{}: no deviation", c.id))?;
                if samples < 50 || dev >= 1e-9 {
                    return Err(format!("{}: {samples} samples, deviation {dev:e}", c.id));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} configurations, ≥ 50 samples, deviation < 1e-9"))
}

fn is_trivial(c: &MultChar) -> bool {
    c.depth() == 0 && (c.unif_value() - 1.0).norm() < 1e-12
}

fn trivial_pair(pi: &PiChar, tau: &EtaleChar) -> bool {
    let pi = match pi {
        PiChar::Field(eta1) => is_trivial(eta1.pullback()),
        PiChar::Split(eta) => is_trivial(eta),
    };
    let tau = match tau {
        EtaleChar::Field(chi) => is_trivial(chi),
        EtaleChar::Split(a, b) => is_trivial(a) && is_trivial(b),
    };
    pi && tau
}

/// Identity and rs-vs-wd cases for each algebra of the suite, with the
/// trivial pair and a ramified twist among the evaluated pairs.
fn minimal_identity(g: &Grid, field: bool) -> Result<String, String> {
    let suite = if field { "minimal-field" } else { "minimal-split" };
    let mut total = 0;
    for (run, rep) in &g.runs {
        for a in run.algebras.iter().filter(|a| a.alg.is_field() == field) {
            let n = at_least(rep, &format!("{suite}/identity/{}/", a.name), 10)?;
            at_least(rep, &format!("{suite}/rs-vs-wd/{}/", a.name), n)?;
            let pairs = minimal::pairs(run, a.name, a.alg);
            if !pairs.iter().take(n).any(|(p, t)| trivial_pair(p, t)) {
                return Err(format!("p={} {}: no trivial pair", p_of(run), a.name));
            }
            if !pairs.iter().take(n).any(|(p, t)| minimal::twist_ramified(p, t)) {
                return Err(format!("p={} {}: no ramified twist", p_of(run), a.name));
            }
            total += n;
        }
    }
    Ok(format!("{total} pairs, trivial and ramified twists included"))
}

fn gamma_delta_independence(g: &Grid) -> Result<String, String> {
    let mut total = 0;
    for (_, rep) in &g.runs {
        for suite in ["minimal-field", "minimal-split"] {
            let cs = with_prefix(rep, &format!("{suite}/phi-independence/"));
            all_pass(&cs)?;
            if let Some(c) = cs.iter().find(|c| c.detail.as_deref() != Some("Γ_δ from 3 test functions")) {
                return Err(format!("{}: {}", c.id, c.detail.as_deref().unwrap_or("")));
            }
            total += cs.len();
        }
    }
    Ok(format!("{total} pairs, 3 test functions each"))
}

fn two_route(g: &Grid) -> Result<String, String> {
    let mut total = 0;
    for (_, rep) in &g.runs {
        for suite in ["minimal-field", "minimal-split"] {
            total += at_least(rep, &format!("{suite}/two-route/"), 10)?;
        }
    }
    Ok(format!("{total} pairs"))
}

fn catalog(g: &Grid) -> Result<String, String> {
    let (run, rep) = &g.groups;
    let key = |t: &lg_groups::catalog::Tuple| (t.n, t.r, t.k);
    let have: BTreeSet<_> = run.tuples().iter().map(key).collect();
    if !standard_tuples().iter().all(|t| have.contains(&key(t))) {
        return Err("the standard tuples are not all configured".into());
    }
    let cs = with_prefix(rep, "matrix-catalog/");
    all_pass(&cs)?;
    let exact = format!("{0} of {0} trials hold exactly", run.config.trials);
    if run.config.trials < 100 {
        return Err(format!("{} trials", run.config.trials));
    }
    if let Some(c) = cs.iter().find(|c| !matches!(&c.lhs, Some(Side::Text(t)) if *t == exact)) {
        return Err(format!("{}: {:?}", c.id, c.lhs));
    }
    let entries = manifest().map_err(|e| e.to_string())?.entry;
    for e in &entries {
        for sem in ["field", "split"] {
            if with_prefix(rep, &format!("matrix-catalog/{}/{sem}/", e.id)).is_empty() {
                return Err(format!("{} has no {sem} cases", e.id));
            }
        }
    }
    let splits = cs.iter().filter(|c| c.id.contains("r'=")).count();
    if splits == 0 {
        return Err("no split parameter points".into());
    }
    Ok(format!("{} entries, {} cases ({splits} at split points), {} trials", entries.len(), cs.len(), run.config.trials))
}

fn jacobians(g: &Grid) -> Result<String, String> {
    let (_, rep) = &g.groups;
    let entries = manifest().map_err(|e| e.to_string())?.jacobian;
    let cs = with_prefix(rep, "jacobians/");
    all_pass(&cs)?;
    for e in &entries {
        for sem in ["field", "split"] {
            if with_prefix(rep, &format!("jacobians/{}/{sem}/", e.id)).is_empty() {
                return Err(format!("{} has no {sem} cases", e.id));
            }
        }
    }
    Ok(format!("{} exponents, {} cases", entries.len(), cs.len()))
}

#[test]
fn acceptance_grid() {
    let start = Instant::now();
    let g = grid();
    let elapsed = start.elapsed();
    let criteria: Vec<(&str, Result<String, String>)> = vec![
        ("tate gamma independent of the test function", tate_independence(&g)),
        ("tate duality", tate_law(&g, "duality")),
        ("tate sign law", tate_law(&g, "sign")),
        ("λ: X-free, unit modulus, twist law", lambda(&g)),
        ("intertwining normalization certificates", normalization(&g)),
        ("field and split Fourier lemmas", ft_lemmas(&g)),
        ("minimal field identity", minimal_identity(&g, true)),
        ("minimal split identity", minimal_identity(&g, false)),
        ("Γ_δ independent of the test function", gamma_delta_independence(&g)),
        ("Ψ by both routes", two_route(&g)),
        ("matrix catalog", catalog(&g)),
        ("Jacobian exponents", jacobians(&g)),
    ];
    let mut failed = 0;
    for (i, (name, res)) in criteria.iter().enumerate() {
        match res {
            Ok(msg) => println!("[PASS] {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {msg}", i + 1)
            }
        }
    }
    let timing = if elapsed < BUDGET { "PASS" } else { "FAIL" };
    println!("[{timing}] grid runtime {:.1}s (budget {}s)", elapsed.as_secs_f64(), BUDGET.as_secs());
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
    assert!(elapsed < BUDGET, "grid took {elapsed:?}");
}
