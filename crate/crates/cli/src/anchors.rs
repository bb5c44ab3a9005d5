//! The anchor manifest: the statement each case kind checks, and the
//! conventions each suite works under.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

const MANIFEST: &str = include_str!("anchors.toml");

#[derive(Debug, Deserialize)]
struct Kind {
    id: String,
    anchor: String,
}

#[derive(Debug, Deserialize)]
struct Manifest {
    conventions: BTreeMap<String, String>,
    kind: Vec<Kind>,
}

pub struct Anchors {
    kinds: BTreeMap<String, String>,
    conventions: BTreeMap<String, String>,
    catalog: BTreeMap<String, String>,
}

pub fn anchors() -> &'static Anchors {
    static CELL: OnceLock<Anchors> = OnceLock::new();
    CELL.get_or_init(|| {
        let m: Manifest = toml::from_str(MANIFEST).expect("embedded anchor manifest parses");
        let groups = lg_groups::catalog::manifest().expect("embedded catalog manifest parses");
        let mut catalog = BTreeMap::new();
        for e in groups.entry {
            catalog.insert(e.id, e.anchor);
        }
        for j in groups.jacobian {
            catalog.insert(j.id, j.anchor);
        }
        Anchors { kinds: m.kind.into_iter().map(|k| (k.id, k.anchor)).collect(), conventions: m.conventions, catalog }
    })
}

/// The suite a case id belongs to.
pub fn suite_of(case_id: &str) -> &str {
    case_id.split('/').next().unwrap_or("")
}

impl Anchors {
    /// The anchor of an analytic kind such as "tate/duality".
    pub fn kind(&self, kind: &str) -> &str {
        self.kinds.get(kind).unwrap_or_else(|| panic!("no anchor for case kind {kind:?}"))
    }

    /// The anchor of a catalog entry or Jacobian by its manifest id.
    pub fn catalog(&self, id: &str) -> Option<&str> {
        self.catalog.get(id).map(String::as_str)
    }

    /// The manifest anchor for a case id of any suite.
    pub fn for_case(&self, case_id: &str) -> Option<&str> {
        let mut parts = case_id.split('/');
        let suite = parts.next()?;
        let second = parts.next()?;
        match suite {
            "matrix-catalog" | "jacobians" => self.catalog(second),
            _ => self.kinds.get(&format!("{suite}/{second}")).map(String::as_str),
        }
    }

    pub fn conventions(&self, suite: &str) -> Option<&str> {
        let key = if suite.starts_with("minimal") { "minimal" } else { suite };
        self.conventions.get(key).map(String::as_str)
    }

    pub fn kind_ids(&self) -> impl Iterator<Item = &str> {
        self.kinds.keys().map(String::as_str)
    }
}
