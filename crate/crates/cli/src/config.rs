//! Run configuration: one TOML file per run, validated before anything is
//! computed.

use std::path::Path;

use lg_chars::{AddChar, CharSpec, PiSpec, TauSpec, ValueSpec};
use lg_groups::Tuple;
use lg_padic::{EtaleAlgebra, EtaleKind, PAdicField};
use lg_tate::{Domain, SchwartzFn};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

pub const SUITES: [&str; 8] =
    ["tate", "lambda", "intertwine", "ft-lemmas", "minimal-field", "minimal-split", "matrix-catalog", "jacobians"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldSpec,
    #[serde(default)]
    pub etale: Vec<EtaleSpec>,
    #[serde(default)]
    pub psi: PsiSpec,
    #[serde(default)]
    pub characters: CharacterSpec,
    #[serde(default)]
    pub schwartz_basis: Vec<SchwartzSpec>,
    pub suites: Vec<String>,
    #[serde(default)]
    pub matrix_params: Vec<MatrixParams>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_trials() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaleSpec {
    /// "split", "unramified" or "ramified".
    pub kind: String,
    /// Δ with E = F(√Δ); the standard choice for the kind when absent.
    #[serde(rename = "Delta", default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiSpec {
    #[serde(default)]
    pub conductor_exponent: i32,
}

/// Characters for the analytic suites. Listed specs are always used; the
/// counts ask for additional seeded random draws.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    /// Random characters per base (F and every field E) in the Tate suite.
    #[serde(default = "default_per_base")]
    pub per_base: usize,
    #[serde(default = "default_depth")]
    pub max_depth: u32,
    /// (τ, φ) pairs per algebra in the intertwining suite.
    #[serde(default = "default_certificates")]
    pub certificates: usize,
    /// (π, τ) pairs per algebra in the minimal-case suites, the listed
    /// pairs included.
    #[serde(default = "default_pairs")]
    pub pairs_per_algebra: usize,
    #[serde(default = "default_depth")]
    pub pair_max_depth: u32,
    #[serde(default)]
    pub mult: Vec<CharSpec>,
    #[serde(default)]
    pub pairs: Vec<PairSpec>,
}

fn default_per_base() -> usize {
    20
}
fn default_depth() -> u32 {
    2
}
fn default_certificates() -> usize {
    5
}
fn default_pairs() -> usize {
    10
}

impl Default for CharacterSpec {
    fn default() -> Self {
        Self {
            per_base: default_per_base(),
            max_depth: default_depth(),
            certificates: default_certificates(),
            pairs_per_algebra: default_pairs(),
            pair_max_depth: default_depth(),
            mult: Vec::new(),
            pairs: Vec::new(),
        }
    }
}

/// Explicit minimal-case data for the algebra named by `etale`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub etale: String,
    pub pi: PiSpec,
    pub tau: TauSpec,
}

/// A Schwartz function as a sum of weighted ball indicators. Levels are
/// relative: a term with `level = l` at character depth d is the ball of
/// level d + l around `center`, and `shift` moves it by p^shift.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchwartzSpec {
    /// "F" for functions on F, "E" for functions on F² (E in coordinates a + bδ).
    pub domain: String,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub center: Vec<i64>,
    #[serde(default)]
    pub level: i32,
    #[serde(default)]
    pub shift: i32,
    #[serde(default = "unit_coeff")]
    pub coeff: ValueSpec,
}

fn unit_coeff() -> ValueSpec {
    ValueSpec::Rect { re: 1.0, im: 0.0 }
}

/// A matrix-catalog grid point. Missing k means every k in 1..=n; missing
/// r1, r2 means every splitting of r.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixParams {
    pub n: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<usize>,
}

impl SchwartzSpec {
    pub fn dim(&self) -> usize {
        if self.domain == "F" {
            1
        } else {
            2
        }
    }

    /// The function for a character of depth `depth` on `dom`. `dom` only
    /// fixes how a depth becomes coordinate levels, so E-specs can also be
    /// resolved on a split algebra.
    pub fn resolve(&self, dom: &Domain, depth: u32) -> Result<SchwartzFn, ConfigError> {
        let f = dom.field();
        let dim = self.dim();
        let mut out = SchwartzFn::zero(f, dim);
        for t in &self.terms {
            let lv = dom.levels(depth as i32 + t.level);
            let center = t.center.iter().map(|&c| f.from_i64(c).mul(&f.pow_p(t.shift))).collect();
            let level = lv[..dim].iter().map(|l| l + t.shift).collect();
            let ball = SchwartzFn::indicator(f, center, level).map_err(|e| ConfigError::BadSchwartz(e.to_string()))?;
            let c = t.coeff.value()?;
            out = out.add(&ball.scale(c)).map_err(|e| ConfigError::BadSchwartz(e.to_string()))?;
        }
        Ok(out)
    }
}

/// One algebra of the run, with the name used in case ids.
#[derive(Clone, Copy, Debug)]
pub struct NamedAlgebra {
    pub name: &'static str,
    pub alg: EtaleAlgebra,
}

/// A validated configuration with its derived objects.
#[derive(Clone, Debug)]
pub struct Run {
    pub config: RunConfig,
    pub field: PAdicField,
    pub algebras: Vec<NamedAlgebra>,
    pub psi: AddChar,
}

impl Run {
    pub fn has_suite(&self, s: &str) -> bool {
        self.config.suites.iter().any(|x| x == s)
    }

    pub fn basis(&self, domain: &str) -> Vec<&SchwartzSpec> {
        self.config.schwartz_basis.iter().filter(|s| s.domain == domain).collect()
    }

    pub fn fields(&self) -> impl Iterator<Item = &NamedAlgebra> {
        self.algebras.iter().filter(|a| a.alg.is_field())
    }

    pub fn splits(&self) -> impl Iterator<Item = &NamedAlgebra> {
        self.algebras.iter().filter(|a| !a.alg.is_field())
    }

    pub fn algebra(&self, name: &str) -> Option<&NamedAlgebra> {
        self.algebras.iter().find(|a| a.name == name)
    }

    pub fn tuples(&self) -> Vec<Tuple> {
        self.config
            .matrix_params
            .iter()
            .map(|m| Tuple { n: m.n, r: m.r, k: m.k, split: m.r1.zip(m.r2) })
            .collect()
    }
}

pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
}

fn kind_name(k: EtaleKind) -> &'static str {
    match k {
        EtaleKind::Split => "split",
        EtaleKind::Unramified => "unramified",
        EtaleKind::Ramified => "ramified",
    }
}

fn missing(suite: &str, what: &str) -> ConfigError {
    ConfigError::MissingInput { suite: suite.into(), what: what.into() }
}

pub fn validate(config: RunConfig) -> Result<Run, ConfigError> {
    let field = PAdicField::new(config.field.p, config.field.precision)?;
    if !(1e-12..=1e-6).contains(&config.tol) {
        return Err(ConfigError::Tolerance(config.tol));
    }
    for s in &config.suites {
        if !SUITES.contains(&s.as_str()) {
            return Err(ConfigError::UnknownSuite(s.clone()));
        }
    }
    let mut algebras: Vec<NamedAlgebra> = Vec::new();
    for e in &config.etale {
        let alg = match (e.kind.as_str(), e.delta) {
            ("split", None | Some(1)) => EtaleAlgebra::split(field),
            ("split", Some(d)) => return Err(ConfigError::BadEtale(format!("split algebra with Delta = {d}"))),
            (k @ ("unramified" | "ramified"), d) => {
                let alg = match d {
                    Some(d) => EtaleAlgebra::with_delta(field, field.from_i64(d))?,
                    None if k == "unramified" => EtaleAlgebra::unramified(field),
                    None => EtaleAlgebra::ramified(field),
                };
                if kind_name(alg.kind()) != k {
                    return Err(ConfigError::BadEtale(format!("Delta = {} gives a {} extension, not {k}", d.unwrap_or(0), kind_name(alg.kind()))));
                }
                alg
            }
            (other, _) => return Err(ConfigError::BadEtale(format!("unknown kind {other:?}"))),
        };
        let name = kind_name(alg.kind());
        if algebras.iter().any(|a| a.name == name) {
            return Err(ConfigError::BadEtale(format!("{name} listed twice")));
        }
        algebras.push(NamedAlgebra { name, alg });
    }
    for b in &config.schwartz_basis {
        if b.domain != "F" && b.domain != "E" {
            return Err(ConfigError::BadSchwartz(format!("domain {:?} is neither F nor E", b.domain)));
        }
        if b.terms.is_empty() || b.terms.iter().any(|t| t.center.len() != b.dim()) {
            return Err(ConfigError::BadSchwartz(format!("{} terms need {} center coordinates", b.domain, b.dim())));
        }
    }
    let psi = AddChar::with_conductor(field, config.psi.conductor_exponent);
    let run = Run { config, field, algebras, psi };
    let c = &run.config;
    let has_fields = run.fields().next().is_some();
    let has_split = run.splits().next().is_some();
    let f_basis = !run.basis("F").is_empty();
    let e_basis = !run.basis("E").is_empty();
    for s in &c.suites {
        let need = |cond: bool, what: &str| if cond { Ok(()) } else { Err(missing(s, what)) };
        match s.as_str() {
            "tate" => {
                need(f_basis, "a schwartz_basis entry on F")?;
                need(!has_fields || e_basis, "a schwartz_basis entry on E for the field algebras")?;
                need(c.characters.per_base > 0 || !c.characters.mult.is_empty(), "characters")?;
            }
            "lambda" => need(has_fields, "a quadratic field in etale")?,
            "intertwine" => {
                need(!run.algebras.is_empty(), "an etale algebra")?;
                need(e_basis, "a schwartz_basis entry on E")?;
                need(c.characters.certificates > 0, "characters.certificates > 0")?;
            }
            "ft-lemmas" => {
                need(!run.algebras.is_empty(), "an etale algebra")?;
                need(!has_fields || e_basis, "a schwartz_basis entry on E")?;
                need(!has_split || f_basis, "a schwartz_basis entry on F")?;
            }
            "minimal-field" => need(has_fields, "a quadratic field in etale")?,
            "minimal-split" => need(has_split, "the split algebra in etale")?,
            "matrix-catalog" | "jacobians" => {
                need(!c.matrix_params.is_empty(), "matrix_params")?;
                need(c.trials > 0, "trials > 0")?;
            }
            _ => unreachable!("checked above"),
        }
    }
    for m in &c.matrix_params {
        if m.r == 0 || m.k.is_some_and(|k| k == 0 || k > m.n) {
            return Err(ConfigError::BadMatrixParams(format!("need r ≥ 1 and 1 ≤ k ≤ n in {m:?}")));
        }
        match (m.r1, m.r2) {
            (None, None) => {}
            (Some(a), Some(b)) if a >= 1 && b >= 1 && a + b == m.r => {}
            _ => return Err(ConfigError::BadMatrixParams(format!("r1 + r2 must equal r with both ≥ 1 in {m:?}"))),
        }
    }
    for pair in &c.characters.pairs {
        let named = run.algebra(&pair.etale).ok_or_else(|| ConfigError::BadEtale(format!("pair refers to {:?}, not in etale", pair.etale)))?;
        pair.pi.build(&named.alg)?;
        pair.tau.build(&named.alg)?;
    }
    for spec in &c.characters.mult {
        match spec.base.as_str() {
            "F" => {
                spec.build(&EtaleAlgebra::split(run.field))?;
            }
            _ => {
                for a in run.fields() {
                    spec.build(&a.alg)?;
                }
            }
        }
    }
    Ok(run)
}
