//! Weighted simple graphs on vertices `1..=n` and their Laplacians.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quad::{int, rat_to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

/// One step of the construction history carried by derived graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceStep {
    pub kind: String,
    pub params: String,
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rat>,
    label: Option<String>,
    provenance: Vec<ProvenanceStep>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)], weights: Option<&[Rat]>) -> Result<Self> {
        if let Some(w) = weights {
            if w.len() != edges.len() {
                return Err(Error::WeightCount { edges: edges.len(), weights: w.len() });
            }
        }
        let mut g = Graph::empty(n);
        for (idx, &(i, j)) in edges.iter().enumerate() {
            let w = weights.map_or_else(Rat::one, |w| w[idx].clone());
            g.insert(i, j, w)?;
        }
        Ok(g)
    }

    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new(n, edges, None)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeMap::new(), label: None, provenance: Vec::new() }
    }

    fn insert(&mut self, i: usize, j: usize, w: Rat) -> Result<()> {
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::LoopEdge(i));
        }
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight(i, j));
        }
        if self.edges.insert(key(i, j), w).is_some() {
            return Err(Error::DuplicateEdge(i, j));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> {
        self.edges.iter().map(|(&k, w)| (k, w))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<&Rat> {
        self.edges.get(&key(i, j))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&key(i, j))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| u != v && self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.values().all(One::is_one)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    pub fn provenance(&self) -> &[ProvenanceStep] {
        &self.provenance
    }

    pub fn push_provenance(&mut self, kind: &str, params: String) {
        self.provenance.push(ProvenanceStep { kind: kind.to_string(), params });
    }

    pub fn with_edge(&self, i: usize, j: usize, w: Rat) -> Result<Self> {
        let mut g = self.clone();
        g.insert(i, j, w)?;
        Ok(g)
    }

    pub fn without_edge(&self, i: usize, j: usize) -> Result<Self> {
        let mut g = self.clone();
        if g.edges.remove(&key(i, j)).is_none() {
            return Err(Error::Precondition(format!("edge {i}-{j} is absent")));
        }
        Ok(g)
    }

    /// Adds `count` isolated vertices numbered after the existing ones.
    pub fn with_vertices(&self, count: usize) -> Self {
        let mut g = self.clone();
        g.n += count;
        g
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for u in self.neighbors(comp[k]) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        let mut m = Matrix::<Rat>::zeros(self.n, self.n);
        for (&(i, j), w) in &self.edges {
            let (a, b) = (i - 1, j - 1);
            m.set(a, b, -w);
            m.set(b, a, -w);
            let da = m.get(a, a) + w;
            m.set(a, a, da);
            let db = m.get(b, b) + w;
            m.set(b, b, db);
        }
        LaplacianMatrix(m)
    }

    pub fn complement(&self) -> Result<Self> {
        if !self.is_unit_weight() {
            return Err(Error::Weighted("complement"));
        }
        let mut g = Graph::empty(self.n);
        for j in 2..=self.n {
            for i in 1..j {
                if !self.has_edge(i, j) {
                    g.edges.insert((i, j), Rat::one());
                }
            }
        }
        Ok(g)
    }

    /// Vertex `(v, w)` of the product is numbered `(v - 1) * h.n() + w`.
    pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Self> {
        if !g.is_unit_weight() || !h.is_unit_weight() {
            return Err(Error::Weighted("cartesian product"));
        }
        let nh = h.n;
        let idx = |v: usize, w: usize| (v - 1) * nh + w;
        let mut p = Graph::empty(g.n * nh);
        for v in 1..=g.n {
            for &(a, b) in h.edges.keys() {
                p.edges.insert(key(idx(v, a), idx(v, b)), Rat::one());
            }
        }
        for w in 1..=nh {
            for &(a, b) in g.edges.keys() {
                p.edges.insert(key(idx(a, w), idx(b, w)), Rat::one());
            }
        }
        Ok(p)
    }

    /// `h`'s vertices follow `g`'s, shifted by `g.n()`.
    pub fn disjoint_union(g: &Graph, h: &Graph) -> Self {
        let mut u = g.clone();
        u.n = g.n + h.n;
        u.label = None;
        for (&(i, j), w) in &h.edges {
            u.edges.insert((i + g.n, j + g.n), w.clone());
        }
        u
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if let Some(w) = self.weight(u, v) {
                    g.edges.insert(key(a + 1, b + 1), w.clone());
                }
            }
        }
        g
    }

    /// Merges `j` into `i` and renumbers the vertices above `j` down by one.
    /// Fails when the merge would create a loop or a parallel edge.
    pub fn contract(&self, i: usize, j: usize) -> Result<Self> {
        if i == j || self.has_edge(i, j) {
            return Err(Error::Precondition(format!("cannot merge adjacent or equal vertices {i},{j}")));
        }
        let ni: BTreeSet<usize> = self.neighbors(i).into_iter().collect();
        if self.neighbors(j).iter().any(|u| ni.contains(u)) {
            return Err(Error::Precondition(format!("vertices {i} and {j} share a neighbour")));
        }
        let map = |v: usize| {
            let v = if v == j { i } else { v };
            if v > j {
                v - 1
            } else {
                v
            }
        };
        let mut g = Graph::empty(self.n - 1);
        for (&(a, b), w) in &self.edges {
            g.edges.insert(key(map(a), map(b)), w.clone());
        }
        g.provenance = self.provenance.clone();
        Ok(g)
    }

    /// Parses the `n` line followed by `i j [num/den]` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() < 2 || parts.len() > 3 {
                return Err(Error::Parse(format!("bad edge line '{l}'")));
            }
            let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse(format!("'{s}': {e}")));
            edges.push((p(parts[0])?, p(parts[1])?));
            weights.push(match parts.get(2) {
                Some(w) => parse_rat(w)?,
                None => Rat::one(),
            });
        }
        Graph::new(n, &edges, Some(&weights))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (&(i, j), w) in &self.edges {
            if w.is_one() {
                let _ = writeln!(s, "{i} {j}");
            } else {
                let _ = writeln!(s, "{i} {j} {w}");
            }
        }
        s
    }

    /// Graphviz rendering. `values` annotates vertices; `bold` vertices are drawn bold.
    pub fn to_dot(&self, name: &str, values: Option<&[String]>, bold: &[usize]) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for v in 1..=self.n {
            let label = match values {
                Some(vals) => format!("{v}: {}", vals[v - 1]),
                None => v.to_string(),
            };
            let style = if bold.contains(&v) { ", style=bold, penwidth=2" } else { "" };
            let _ = writeln!(s, "  {v} [label=\"{label}\"{style}];");
        }
        for (&(i, j), w) in &self.edges {
            if w.is_one() {
                let _ = writeln!(s, "  {i} -- {j};");
            } else {
                let _ = writeln!(s, "  {i} -- {j} [label=\"{w}\"];");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(&(i, j), w)| {
                if w.is_one() {
                    json!([i, j])
                } else {
                    json!([i, j, w.to_string()])
                }
            })
            .collect();
        json!({
            "label": self.label,
            "n": self.n,
            "edges": edges,
            "provenance": self.provenance,
        })
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Symmetric zero-row-sum matrix of a (possibly generalized) graph Laplacian.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianMatrix(Matrix<Rat>);

impl LaplacianMatrix {
    pub fn from_matrix(m: Matrix<Rat>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NonSymmetric);
        }
        Ok(LaplacianMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn row_sums_zero(&self) -> bool {
        (0..self.n()).all(|i| self.0.row(i).iter().fold(int(0), |a, x| a + x).is_zero())
    }

    pub fn to_integer(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| {
                        let x = self.0.get(i, j);
                        if x.is_integer() {
                            Ok(x.to_integer())
                        } else {
                            Err(Error::NonIntegerEntry(i + 1, j + 1))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.0.to_rows().iter().map(|r| r.iter().map(rat_to_f64).collect()).collect()
    }
}

/// Unit-weight chain `1-2-...-n`.
pub fn chain(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    Graph::unit(n, &e).expect("valid chain")
}

pub fn cycle(n: usize) -> Graph {
    let mut e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    if n >= 3 {
        e.push((1, n));
    }
    Graph::unit(n, &e).expect("valid cycle")
}

pub fn clique(n: usize) -> Graph {
    let e: Vec<_> = (1..=n).flat_map(|j| (1..j).map(move |i| (i, j))).collect();
    Graph::unit(n, &e).expect("valid clique")
}

/// Star with centre 1 and `n - 1` leaves.
pub fn star(n: usize) -> Graph {
    let e: Vec<_> = (2..=n).map(|i| (1, i)).collect();
    Graph::unit(n, &e).expect("valid star")
}

/// Complete multipartite graph; parts are consecutive vertex blocks.
pub fn multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (p, &size) in parts.iter().enumerate() {
        part.extend(std::iter::repeat(p).take(size));
    }
    let e: Vec<_> = (1..=n)
        .flat_map(|j| (1..j).map(move |i| (i, j)))
        .filter(|&(i, j)| part[i - 1] != part[j - 1])
        .collect();
    Graph::unit(n, &e).expect("valid multipartite graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    #[test]
    fn build_errors() {
        assert_eq!(Graph::unit(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(Graph::unit(3, &[(1, 2), (2, 1)]), Err(Error::DuplicateEdge(2, 1)));
        assert_eq!(Graph::unit(3, &[(1, 4)]), Err(Error::VertexOutOfRange { vertex: 4, n: 3 }));
        assert_eq!(
            Graph::new(2, &[(1, 2)], Some(&[rat(0, 1)])),
            Err(Error::NonPositiveWeight(1, 2))
        );
        assert_eq!(
            Graph::new(2, &[(1, 2)], Some(&[])),
            Err(Error::WeightCount { edges: 1, weights: 0 })
        );
    }

    #[test]
    fn single_vertex() {
        let g = Graph::unit(1, &[]).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert!(g.is_connected());
    }

    #[test]
    fn laplacians() {
        let l = chain(3).laplacian();
        let want = Matrix::from_rows(vec![
            vec![int(1), int(-1), int(0)],
            vec![int(-1), int(2), int(-1)],
            vec![int(0), int(-1), int(1)],
        ]);
        assert_eq!(l.matrix(), &want);
        let k3 = clique(3).laplacian();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k3.matrix().get(i, j), &int(if i == j { 2 } else { -1 }));
            }
        }
        let k2 = clique(2).laplacian();
        assert_eq!(k2.to_integer().unwrap()[0][1], BigInt::from(-1));
    }

    #[test]
    fn weighted_laplacian_and_file_roundtrip() {
        let g = Graph::parse("3\n1 2 1/2\n2 3\n").unwrap();
        assert!(g.laplacian().row_sums_zero());
        assert_eq!(g.laplacian().matrix().get(1, 1), &rat(3, 2));
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(g.complement().is_err());
    }

    #[test]
    fn complement_of_clique_is_empty() {
        let c = clique(4).complement().unwrap();
        assert_eq!(c.m(), 0);
        assert_eq!(c.components().len(), 4);
    }

    #[test]
    fn product_counts() {
        let k2 = clique(2);
        assert_eq!(Graph::cartesian_product(&k2, &k2).unwrap().m(), 4);
        let c3 = Graph::cartesian_product(&chain(3), &chain(3)).unwrap();
        assert_eq!((c3.n(), c3.m()), (9, 12));
        let p = Graph::cartesian_product(&cycle(4), &chain(3)).unwrap();
        assert_eq!((p.n(), p.m()), (12, 4 * 2 + 3 * 4));
    }

    #[test]
    fn contraction_rules() {
        let two = Graph::disjoint_union(&chain(3), &chain(3));
        let s = two.contract(2, 5).unwrap();
        assert_eq!(s.n(), 5);
        assert_eq!(s.degree(2), 4);
        assert!(chain(3).contract(1, 2).is_err());
        assert!(chain(3).contract(1, 3).is_err());
    }

    #[test]
    fn dot_output() {
        let d = chain(2).to_dot("k2", None, &[1]);
        assert!(d.contains("1 -- 2;"));
        assert!(d.contains("style=bold"));
    }
}
