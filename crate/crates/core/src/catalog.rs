//! The bundled catalog of connected graphs on up to six vertices.
//!
//! Rows read `id&n&m&t1~t2~...`, each token being two vertex digits. Irregular rows
//! (repeated ids, suffixed ids, stated edge counts that disagree with the list) are
//! kept verbatim and flagged.

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

pub const SMALL_TEXT: &str = include_str!("../data/catalog_small.txt");
pub const SIX_TEXT: &str = include_str!("../data/catalog_six.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CatalogFlag {
    /// Another row carries the same id.
    DuplicateId,
    /// The id has a non-numeric suffix such as `87B`.
    SuffixedId,
    EdgeCountMismatch { stated: usize, parsed: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    /// Key as cited elsewhere, e.g. `5.16` or `6.87B`.
    pub key: String,
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(usize, usize)>,
    pub flags: Vec<CatalogFlag>,
    /// 1-based line in the source text.
    pub line: usize,
}

impl CatalogEntry {
    pub fn graph(&self) -> Graph {
        Graph::unit(self.n, &self.edges).expect("validated at parse time").with_label(self.key.clone())
    }
}

fn parse_row(prefix: &str, line: usize, text: &str) -> Result<CatalogEntry> {
    let err = |msg: String| Error::Catalog { line, msg };
    let fields: Vec<&str> = text.split('&').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(err(format!("expected 4 '&'-separated fields, found {}", fields.len())));
    }
    let id = fields[0].to_string();
    if id.is_empty() || !id.starts_with(|c: char| c.is_ascii_digit()) {
        return Err(err(format!("bad id '{id}'")));
    }
    let n: usize = fields[1].parse().map_err(|_| err(format!("bad vertex count '{}'", fields[1])))?;
    let m: usize = fields[2].parse().map_err(|_| err(format!("bad edge count '{}'", fields[2])))?;
    let mut edges = Vec::new();
    for tok in fields[3].split('~').map(str::trim).filter(|t| !t.is_empty()) {
        let d: Vec<u32> = tok.chars().filter_map(|c| c.to_digit(10)).collect();
        if tok.chars().count() != 2 || d.len() != 2 {
            return Err(err(format!("malformed token '{tok}'")));
        }
        let (i, j) = (d[0] as usize, d[1] as usize);
        if i == 0 || j == 0 || i > n || j > n {
            return Err(err(format!("token '{tok}' names a vertex outside 1..={n}")));
        }
        if i == j {
            return Err(err(format!("token '{tok}' is a loop")));
        }
        let e = (i.min(j), i.max(j));
        if edges.contains(&e) {
            return Err(err(format!("token '{tok}' repeats an edge")));
        }
        edges.push(e);
    }
    let mut flags = Vec::new();
    if !id.chars().all(|c| c.is_ascii_digit()) {
        flags.push(CatalogFlag::SuffixedId);
    }
    if edges.len() != m {
        flags.push(CatalogFlag::EdgeCountMismatch { stated: m, parsed: edges.len() });
    }
    Ok(CatalogEntry { key: format!("{prefix}.{id}"), id, n, m, edges, flags, line })
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub prefix: String,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Parses a listing; `#` lines and blank lines are skipped.
    pub fn parse(text: &str, prefix: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (k, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            entries.push(parse_row(prefix, k + 1, l)?);
        }
        let mut count: HashMap<String, usize> = HashMap::new();
        for e in &entries {
            *count.entry(e.id.clone()).or_default() += 1;
        }
        for e in &mut entries {
            if count[&e.id] > 1 {
                e.flags.insert(0, CatalogFlag::DuplicateId);
            }
        }
        Ok(Catalog { prefix: prefix.to_string(), entries })
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| !e.flags.is_empty())
    }
}

/// Both bundled catalogs with lookup by key and by isomorphism class.
#[derive(Clone, Debug)]
pub struct CatalogSet {
    pub small: Catalog,
    pub six: Catalog,
    by_class: BTreeMap<CanonicalForm, Vec<String>>,
}

impl CatalogSet {
    pub fn bundled() -> Result<Self> {
        CatalogSet::new(Catalog::parse(SMALL_TEXT, "5")?, Catalog::parse(SIX_TEXT, "6")?)
    }

    pub fn new(small: Catalog, six: Catalog) -> Result<Self> {
        let mut by_class: BTreeMap<CanonicalForm, Vec<String>> = BTreeMap::new();
        for e in small.entries.iter().chain(&six.entries) {
            by_class.entry(canonical_form(&e.graph())?).or_default().push(e.key.clone());
        }
        Ok(CatalogSet { small, six, by_class })
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.small.entries.iter().chain(&self.six.entries)
    }

    /// Resolves keys like `5.16` or `6.87B`. A key shared by several rows is an error.
    pub fn lookup(&self, key: &str) -> Result<&CatalogEntry> {
        let hits: Vec<&CatalogEntry> = self.entries().filter(|e| e.key == key).collect();
        match hits.as_slice() {
            [] => Err(Error::UnknownId(key.to_string())),
            [e] => Ok(e),
            _ => Err(Error::AmbiguousId(key.to_string())),
        }
    }

    /// All rows sharing `key`, in file order.
    pub fn rows(&self, key: &str) -> Vec<&CatalogEntry> {
        self.entries().filter(|e| e.key == key).collect()
    }

    /// Catalog keys whose graph is isomorphic to `g`, in file order.
    pub fn keys_for(&self, g: &Graph) -> Vec<String> {
        canonical_form(g)
            .ok()
            .and_then(|c| self.by_class.get(&c).cloned())
            .unwrap_or_default()
    }

    pub fn keys_for_class(&self, c: &CanonicalForm) -> &[String] {
        self.by_class.get(c).map_or(&[], Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn row_forms() {
        let e = parse_row("5", 1, "7&4&4&12~14~23~34").unwrap();
        assert_eq!(e.graph(), cycle(4));
        let e = parse_row("5", 1, "12&5&8&12~14~15~23~42~25~34~45").unwrap();
        assert!(e.edges.contains(&(2, 4)));
        let e = parse_row("6", 1, "30&6&10&12~15~61~23~24~25~34~36~45~56").unwrap();
        assert!(e.edges.contains(&(1, 6)));
        let e = parse_row("5", 1, "2&3&3&12~13~23~").unwrap();
        assert_eq!(e.m, 3);
        assert!(e.flags.is_empty());
    }

    #[test]
    fn row_errors() {
        assert!(matches!(parse_row("5", 3, "1&2&1&1x"), Err(Error::Catalog { line: 3, .. })));
        assert!(parse_row("5", 1, "1&2&1&13").is_err());
        assert!(parse_row("5", 1, "1&2&1&123").is_err());
        let e = parse_row("5", 1, "1&3&3&12~23").unwrap();
        assert_eq!(e.flags, vec![CatalogFlag::EdgeCountMismatch { stated: 3, parsed: 2 }]);
    }

    #[test]
    fn bundled_flags_and_lookup() {
        let c = CatalogSet::bundled().unwrap();
        assert_eq!(c.small.entries.len(), 30);
        assert_eq!(c.six.entries.len(), 113);
        let flagged: Vec<(&str, &[CatalogFlag])> =
            c.six.flagged().map(|e| (e.key.as_str(), e.flags.as_slice())).collect();
        assert_eq!(
            flagged,
            vec![
                ("6.87B", &[CatalogFlag::SuffixedId][..]),
                ("6.103", &[CatalogFlag::DuplicateId][..]),
                ("6.103", &[CatalogFlag::DuplicateId][..]),
            ]
        );
        assert_eq!(c.lookup("6.103"), Err(Error::AmbiguousId("6.103".into())));
        assert_eq!(c.lookup("6.104"), Err(Error::UnknownId("6.104".into())));
        assert_eq!(c.lookup("5.7").unwrap().graph(), cycle(4));
        assert_eq!(c.keys_for(&cycle(4)), vec!["5.7".to_string()]);
    }
}
