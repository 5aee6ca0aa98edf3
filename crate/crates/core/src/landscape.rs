//! Families of lambda-soft graphs, their minimal members and the transformation
//! edges between members.

use crate::canon::{canonical_form, connected_classes, CanonicalForm, MAX_VERTICES};
use crate::catalog::CatalogSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::quad::{QuadNum, Rat, Scalar};
use crate::spectrum::exact_soft_witness;
use crate::transform::{single_steps, ExactPair, StepBounds, TransformKind};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value as Json};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

/// Largest `n_max` accepted without an explicit override.
pub const DEFAULT_N_MAX: usize = 6;

/// A connected graph with integer eigenvalue `lambda`.
#[derive(Clone, Debug)]
pub struct SoftFamilyEntry {
    pub class: CanonicalForm,
    pub graph: Graph,
    pub catalog_ids: Vec<String>,
    pub lambda: i64,
    /// Eigenspace basis.
    pub basis: Vec<Vec<QuadNum>>,
    pub soft: Vec<usize>,
    /// One vector per soft vertex, vanishing there.
    pub witnesses: Vec<Vec<QuadNum>>,
    pub is_minimal: bool,
}

impl SoftFamilyEntry {
    pub fn name(&self) -> String {
        self.catalog_ids.first().cloned().unwrap_or_else(|| self.class.to_string())
    }

    pub fn is_soft(&self) -> bool {
        !self.soft.is_empty()
    }

    /// Basis vectors, soft witnesses and, for degenerate eigenvalues, pairwise sums and
    /// differences of basis vectors.
    pub fn probe_vectors(&self) -> Vec<Vec<QuadNum>> {
        let mut out: Vec<Vec<QuadNum>> = Vec::new();
        let mut push = |v: Vec<QuadNum>| {
            let v = crate::quad::normalize_quad_vector(&v);
            if v.iter().any(|x| !x.is_zero()) && !out.contains(&v) {
                out.push(v);
            }
        };
        for b in &self.basis {
            push(b.clone());
        }
        for w in &self.witnesses {
            push(w.clone());
        }
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                push(self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a.plus(b)).collect());
                push(self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a.minus(b)).collect());
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let vecs = |vs: &[Vec<QuadNum>]| {
            vs.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
        };
        json!({
            "name": self.name(),
            "class": self.class.to_string(),
            "catalog_ids": self.catalog_ids,
            "n": self.graph.n(),
            "m": self.graph.m(),
            "edges": self.graph.edge_list(),
            "lambda": self.lambda,
            "basis": vecs(&self.basis),
            "soft": self.soft,
            "witnesses": vecs(&self.witnesses),
            "is_minimal": self.is_minimal,
        })
    }
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max > MAX_VERTICES {
        return Err(Error::TooLarge { vertices: n_max, cap: MAX_VERTICES });
    }
    Ok(())
}

fn entry_for(g: Graph, class: CanonicalForm, lambda: i64, catalog: &CatalogSet) -> Option<SoftFamilyEntry> {
    let lam = Rat::from_integer(BigInt::from(lambda));
    let basis: Vec<Vec<QuadNum>> = g
        .laplacian()
        .matrix()
        .shifted(&lam)
        .nullspace()
        .iter()
        .map(|v| crate::quad::normalize_quad_vector(&v.iter().map(|x| QuadNum::from_rat(x.clone())).collect::<Vec<_>>()))
        .collect();
    if basis.is_empty() {
        return None;
    }
    let mut soft = Vec::new();
    let mut witnesses = Vec::new();
    for s in 0..g.n() {
        if let Some(w) = exact_soft_witness(&basis, s) {
            soft.push(s + 1);
            witnesses.push(w);
        }
    }
    let catalog_ids = catalog.keys_for_class(&class).to_vec();
    let graph = match catalog_ids.first() {
        Some(k) => g.with_label(k.clone()),
        None => g,
    };
    Some(SoftFamilyEntry { class, graph, catalog_ids, lambda, basis, soft, witnesses, is_minimal: false })
}

/// Every connected graph with `1 <= n <= n_max` having the integer eigenvalue `lambda`,
/// soft or not, in class order.
pub fn lambda_graphs(lambda: i64, n_max: usize, catalog: &CatalogSet) -> Result<Vec<SoftFamilyEntry>> {
    check_n_max(n_max)?;
    let mut classes = Vec::new();
    for n in 1..=n_max {
        classes.extend_from_slice(connected_classes(n)?);
    }
    Ok(classes.par_iter().filter_map(|c| entry_for(c.to_graph(), *c, lambda, catalog)).collect())
}

/// Classes of all proper connected subgraphs (vertex and edge deletions) of a class.
#[derive(Default)]
pub struct SubgraphClosure {
    memo: HashMap<CanonicalForm, BTreeSet<CanonicalForm>>,
}

impl SubgraphClosure {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graphs one deletion away: an edge whose removal keeps the graph connected, a
    /// vertex whose removal does, or a pendant edge together with its leaf.
    fn children(g: &Graph) -> Result<BTreeSet<CanonicalForm>> {
        let mut out = BTreeSet::new();
        let n = g.n();
        for (i, j) in g.edge_list() {
            let h = g.without_edge(i, j)?;
            if h.is_connected() {
                out.insert(canonical_form(&h)?);
            }
        }
        if n > 1 {
            for v in 1..=n {
                let keep: Vec<usize> = (1..=n).filter(|&u| u != v).collect();
                let h = g.induced(&keep);
                if h.is_connected() {
                    out.insert(canonical_form(&h)?);
                }
            }
        }
        Ok(out)
    }

    pub fn proper_subgraphs(&mut self, c: CanonicalForm) -> Result<&BTreeSet<CanonicalForm>> {
        if !self.memo.contains_key(&c) {
            let mut all = BTreeSet::new();
            for ch in Self::children(&c.to_graph())? {
                all.insert(ch);
                let below = self.proper_subgraphs(ch)?.clone();
                all.extend(below);
            }
            self.memo.insert(c, all);
        }
        Ok(&self.memo[&c])
    }
}

/// Soft members of [`lambda_graphs`] with minimality under connected-subgraph inclusion.
pub fn lambda_soft_family(lambda: i64, n_max: usize, catalog: &CatalogSet) -> Result<Vec<SoftFamilyEntry>> {
    let mut fam: Vec<SoftFamilyEntry> =
        lambda_graphs(lambda, n_max, catalog)?.into_iter().filter(SoftFamilyEntry::is_soft).collect();
    let classes: BTreeSet<CanonicalForm> = fam.iter().map(|e| e.class).collect();
    let mut closure = SubgraphClosure::new();
    for e in &mut fam {
        e.is_minimal = closure.proper_subgraphs(e.class)?.is_disjoint(&classes);
    }
    Ok(fam)
}

pub fn minimal_members(family: &[SoftFamilyEntry]) -> Vec<SoftFamilyEntry> {
    family.iter().filter(|e| e.is_minimal).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyEdge {
    pub from: CanonicalForm,
    pub from_lambda: i64,
    pub to: CanonicalForm,
    pub to_lambda: i64,
    pub kind: TransformKind,
}

impl FamilyEdge {
    pub fn to_json(&self, names: &BTreeMap<CanonicalForm, String>) -> Json {
        let nm = |c: &CanonicalForm| names.get(c).cloned().unwrap_or_else(|| c.to_string());
        json!({
            "from": nm(&self.from),
            "from_lambda": self.from_lambda,
            "to": nm(&self.to),
            "to_lambda": self.to_lambda,
            "kind": self.kind.name(),
        })
    }
}

/// Single transformation steps from every `lambda` graph (soft or not) whose result is
/// a connected member of `targets` with at most `n_max` vertices.
///
/// Preserving steps land in the same family. With `shifts`, shifting steps are kept when
/// the shifted eigenvalue is an integer with a family in `targets`.
pub fn discover_edges(
    sources: &[SoftFamilyEntry],
    targets: &BTreeMap<i64, BTreeSet<CanonicalForm>>,
    n_max: usize,
    shifts: bool,
) -> Result<Vec<FamilyEdge>> {
    let bounds = StepBounds { with_shifts: shifts, ..StepBounds::default() };
    let found: Vec<Vec<FamilyEdge>> = sources
        .par_iter()
        .map(|src| -> Result<Vec<FamilyEdge>> {
            let mut out = Vec::new();
            for v in src.probe_vectors() {
                let pair = ExactPair::new(QuadNum::from_int(src.lambda), v);
                for rec in single_steps(&src.graph, &pair, &bounds)? {
                    if !rec.verified || rec.output.n() > n_max || !rec.output.is_connected() || !rec.output.is_unit_weight() {
                        continue;
                    }
                    let Some(to_lambda) = rec.output_pair.value.as_rat().filter(|r| r.is_integer()).and_then(|r| i64::try_from(r.to_integer()).ok()) else {
                        continue;
                    };
                    if !rec.output_pair.vector.iter().any(Scalar::is_zero) {
                        continue;
                    }
                    let to = canonical_form(&rec.output)?;
                    if to == src.class && to_lambda == src.lambda {
                        continue;
                    }
                    if targets.get(&to_lambda).is_some_and(|t| t.contains(&to)) {
                        out.push(FamilyEdge { from: src.class, from_lambda: src.lambda, to, to_lambda, kind: rec.kind });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let set: BTreeSet<FamilyEdge> = found.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// Breadth-first distances from `root` along same-family edges.
pub fn reachability(root: CanonicalForm, edges: &[FamilyEdge]) -> BTreeMap<CanonicalForm, usize> {
    let mut dist = BTreeMap::from([(root, 0)]);
    let mut q = VecDeque::from([root]);
    while let Some(c) = q.pop_front() {
        let d = dist[&c];
        for e in edges.iter().filter(|e| e.from == c && e.from_lambda == e.to_lambda) {
            if !dist.contains_key(&e.to) {
                dist.insert(e.to, d + 1);
                q.push_back(e.to);
            }
        }
    }
    dist
}

/// A family with its generators and discovered edges.
#[derive(Clone, Debug)]
pub struct Landscape {
    pub lambda: i64,
    pub n_max: usize,
    pub family: Vec<SoftFamilyEntry>,
    /// Non-soft graphs with the eigenvalue, used only as edge sources.
    pub generators: Vec<SoftFamilyEntry>,
    pub edges: Vec<FamilyEdge>,
}

impl Landscape {
    pub fn compute(lambda: i64, n_max: usize, catalog: &CatalogSet) -> Result<Self> {
        if lambda < 1 {
            return Err(Error::Precondition("lambda must be at least 1".into()));
        }
        let all = lambda_graphs(lambda, n_max, catalog)?;
        let family = lambda_soft_family(lambda, n_max, catalog)?;
        let generators: Vec<SoftFamilyEntry> = all.into_iter().filter(|e| !e.is_soft()).collect();
        let targets = BTreeMap::from([(lambda, family.iter().map(|e| e.class).collect::<BTreeSet<_>>())]);
        let sources: Vec<SoftFamilyEntry> = family.iter().chain(&generators).cloned().collect();
        let edges = discover_edges(&sources, &targets, n_max, false)?;
        Ok(Landscape { lambda, n_max, family, generators, edges })
    }

    pub fn names(&self) -> BTreeMap<CanonicalForm, String> {
        self.family.iter().chain(&self.generators).map(|e| (e.class, e.name())).collect()
    }

    pub fn minimal(&self) -> Vec<&SoftFamilyEntry> {
        self.family.iter().filter(|e| e.is_minimal).collect()
    }

    pub fn to_json(&self) -> Json {
        let names = self.names();
        json!({
            "lambda": self.lambda,
            "n_max": self.n_max,
            "family": self.family.iter().map(SoftFamilyEntry::to_json).collect::<Vec<_>>(),
            "minimal": self.minimal().iter().map(|e| e.name()).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(SoftFamilyEntry::to_json).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| e.to_json(&names)).collect::<Vec<_>>(),
        })
    }

    /// One cluster per member, grouped by vertex count; soft vertices drawn bold.
    pub fn to_dot(&self) -> String {
        let names = self.names();
        let mut s = String::new();
        let _ = writeln!(s, "digraph family_{} {{\n  compound=true;\n  node [shape=circle, width=0.3, fontsize=9];", self.lambda);
        let mut by_n: BTreeMap<usize, Vec<(usize, &SoftFamilyEntry)>> = BTreeMap::new();
        for (k, e) in self.family.iter().enumerate() {
            by_n.entry(e.graph.n()).or_default().push((k, e));
        }
        let idx: BTreeMap<CanonicalForm, usize> = self.family.iter().enumerate().map(|(k, e)| (e.class, k)).collect();
        for (n, members) in &by_n {
            let _ = writeln!(s, "  subgraph cluster_n{n} {{\n    label=\"n = {n}\";");
            for (k, e) in members {
                let _ = writeln!(s, "    subgraph cluster_m{k} {{\n      label=\"{}{}\";", e.name(), if e.is_minimal { " (minimal)" } else { "" });
                let w = e.witnesses.first().or(e.basis.first());
                for v in 1..=e.graph.n() {
                    let val = w.map(|w| w[v - 1].to_string()).unwrap_or_default();
                    let style = if e.soft.contains(&v) { ", style=bold, penwidth=3" } else { "" };
                    let _ = writeln!(s, "      m{k}_{v} [label=\"{val}\"{style}];");
                }
                for (i, j) in e.graph.edge_list() {
                    let _ = writeln!(s, "      m{k}_{i} -> m{k}_{j} [dir=none];");
                }
                let _ = writeln!(s, "    }}");
            }
            let _ = writeln!(s, "  }}");
        }
        for e in &self.edges {
            if let (Some(a), Some(b)) = (idx.get(&e.from), idx.get(&e.to)) {
                let _ = writeln!(s, "  m{a}_1 -> m{b}_1 [ltail=cluster_m{a}, lhead=cluster_m{b}, label=\"{}\"];", e.kind.name());
            } else if let Some(b) = idx.get(&e.to) {
                let from = names.get(&e.from).cloned().unwrap_or_else(|| e.from.to_string());
                let _ = writeln!(s, "  \"{from}\" [shape=box];\n  \"{from}\" -> m{b}_1 [lhead=cluster_m{b}, label=\"{}\"];", e.kind.name());
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("lambda {} soft family, n <= {}: {} members, {} minimal\n", self.lambda, self.n_max, self.family.len(), self.minimal().len());
        let _ = writeln!(s, "{:<10} {:>2} {:>2}  {:<7} {:<14} witness", "graph", "n", "m", "minimal", "soft");
        for e in &self.family {
            let w = e.witnesses.first().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).unwrap_or_default();
            let soft = e.soft.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(s, "{:<10} {:>2} {:>2}  {:<7} {:<14} ({w})", e.name(), e.graph.n(), e.graph.m(), if e.is_minimal { "yes" } else { "" }, soft);
        }
        let names = self.names();
        let _ = writeln!(s, "edges: {}", self.edges.len());
        for e in &self.edges {
            let nm = |c: &CanonicalForm| names.get(c).cloned().unwrap_or_else(|| c.to_string());
            let _ = writeln!(s, "  {} -> {} [{}]", nm(&e.from), nm(&e.to), e.kind);
        }
        s
    }
}

/// Edges between families of different eigenvalues through shifting steps.
pub fn cross_family_edges(lambdas: &[i64], n_max: usize, catalog: &CatalogSet) -> Result<Vec<FamilyEdge>> {
    let mut targets = BTreeMap::new();
    let mut sources = Vec::new();
    for &l in lambdas {
        let all = lambda_graphs(l, n_max, catalog)?;
        targets.insert(l, all.iter().filter(|e| e.is_soft()).map(|e| e.class).collect::<BTreeSet<_>>());
        sources.extend(all);
    }
    Ok(discover_edges(&sources, &targets, n_max, true)?
        .into_iter()
        .filter(|e| e.from_lambda != e.to_lambda)
        .collect())
}

/// Members whose single preserving steps leave the family: always empty when the
/// transformations and class lookup agree.
pub fn closure_violations(family: &[SoftFamilyEntry], n_max: usize) -> Result<Vec<String>> {
    let classes: BTreeSet<CanonicalForm> = family.iter().map(|e| e.class).collect();
    let bounds = StepBounds { with_shifts: false, ..StepBounds::default() };
    let mut out = Vec::new();
    for e in family {
        for w in &e.witnesses {
            let pair = ExactPair::new(QuadNum::from_int(e.lambda), w.clone());
            for rec in single_steps(&e.graph, &pair, &bounds)? {
                if rec.output.n() > n_max || !rec.output.is_connected() || !rec.output.is_unit_weight() {
                    continue;
                }
                if !rec.verified || !classes.contains(&canonical_form(&rec.output)?) {
                    out.push(format!("{} via {} {}", e.name(), rec.kind, rec.params));
                }
            }
        }
    }
    Ok(out)
}

/// `true` iff `m` is the Laplacian of `g` times a vector equal to `lambda` times it.
pub fn satisfies(g: &Graph, lambda: &QuadNum, v: &[QuadNum]) -> bool {
    let l: Matrix<QuadNum> = g.laplacian().matrix().map(|x| QuadNum::from_rat(x.clone()));
    v.iter().any(|x| !x.is_zero()) && l.mul_vec(v).iter().zip(v).all(|(a, b)| a == &lambda.times(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, cycle};

    fn cat() -> CatalogSet {
        CatalogSet::bundled().unwrap()
    }

    #[test]
    fn chain_is_the_root_of_lambda_one() {
        let c = cat();
        let fam = lambda_soft_family(1, 4, &c).unwrap();
        let p3 = canonical_form(&chain(3)).unwrap();
        let e = fam.iter().find(|e| e.class == p3).unwrap();
        assert!(e.is_minimal);
        assert_eq!(e.soft.len(), 1);
        assert_eq!(e.graph.degree(e.soft[0]), 2);
    }

    #[test]
    fn cycle_four_in_lambda_two() {
        let fam = lambda_soft_family(2, 4, &cat()).unwrap();
        let c4 = canonical_form(&cycle(4)).unwrap();
        assert!(fam.iter().any(|e| e.class == c4));
        assert!(fam.iter().any(|e| e.catalog_ids.contains(&"5.5".to_string())));
    }

    #[test]
    fn large_lambda_on_three_vertices_is_empty() {
        assert!(lambda_soft_family(7, 3, &cat()).unwrap().is_empty());
    }

    #[test]
    fn closure_of_a_triangle() {
        let mut cl = SubgraphClosure::new();
        let k3 = canonical_form(&crate::graph::clique(3)).unwrap();
        let subs = cl.proper_subgraphs(k3).unwrap().clone();
        assert_eq!(subs.len(), 3);
    }
}
