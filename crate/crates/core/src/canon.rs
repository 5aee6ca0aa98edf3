//! Canonical labels and isomorph-free enumeration of small connected graphs.
//!
//! The label of a graph is the smallest upper-triangular adjacency bit string over
//! all vertex orderings. Pairs `(i, j)`, `i < j`, are ordered by `j` and then `i`, so
//! fixing the first `k` vertices of an ordering fixes a prefix of the string and
//! the minimum can be searched with prefix pruning.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

pub const MAX_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: u8,
    pub bits: u32,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn pair_pos(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let p = pair_count(n);
        let mut e = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (p - 1 - pair_pos(i, j)) & 1 == 1 {
                    e.push((i + 1, j + 1));
                }
            }
        }
        Graph::unit(n, &e).expect("decoded canonical form")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = pair_count(self.n as usize);
        write!(f, "{}:", self.n)?;
        for k in (0..p).rev() {
            write!(f, "{}", self.bits >> k & 1)?;
        }
        Ok(())
    }
}

fn adjacency(g: &Graph) -> Result<Vec<u8>> {
    if !g.is_unit_weight() {
        return Err(Error::Weighted("canonical form"));
    }
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { vertices: n, cap: MAX_VERTICES });
    }
    let mut adj = vec![0u8; n];
    for ((i, j), _) in g.edges() {
        adj[i - 1] |= 1 << (j - 1);
        adj[j - 1] |= 1 << (i - 1);
    }
    Ok(adj)
}

/// Bit string of `g` under its own labelling.
pub fn labelled_bits(g: &Graph) -> Result<u32> {
    let adj = adjacency(g)?;
    Ok(bits_under(&adj, &(0..g.n()).collect::<Vec<_>>()))
}

fn bits_under(adj: &[u8], order: &[usize]) -> u32 {
    let n = order.len();
    let p = pair_count(n);
    let mut bits = 0u32;
    for j in 1..n {
        for i in 0..j {
            if adj[order[i]] >> order[j] & 1 == 1 {
                bits |= 1 << (p - 1 - pair_pos(i, j));
            }
        }
    }
    bits
}

struct Search<'a> {
    adj: &'a [u8],
    n: usize,
    best: Option<u32>,
    order: Vec<usize>,
}

impl Search<'_> {
    // `prefix` holds the bits of pairs among the first `k` chosen vertices.
    fn run(&mut self, k: usize, used: u8, prefix: u32) {
        if k == self.n {
            if self.best.map_or(true, |b| prefix < b) {
                self.best = Some(prefix);
            }
            return;
        }
        for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut next = prefix;
            for i in 0..k {
                next = next << 1 | u32::from(self.adj[self.order[i]] >> v & 1);
            }
            if let Some(b) = self.best {
                let len = pair_count(k + 1);
                if next > b >> (pair_count(self.n) - len) {
                    continue;
                }
            }
            self.order.push(v);
            self.run(k + 1, used | 1 << v, next);
            self.order.pop();
        }
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let adj = adjacency(g)?;
    let n = g.n();
    let mut s = Search { adj: &adj, n, best: None, order: Vec::with_capacity(n) };
    s.run(0, 0, 0);
    Ok(CanonicalForm { n: n as u8, bits: s.best.unwrap_or(0) })
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(g.n() == h.n() && g.m() == h.m() && canonical_form(g)? == canonical_form(h)?)
}

static LEVELS: [OnceLock<Vec<CanonicalForm>>; MAX_VERTICES + 1] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// Canonical forms of the connected classes on `n` vertices, sorted.
pub fn connected_classes(n: usize) -> Result<&'static [CanonicalForm]> {
    if n == 0 {
        return Err(Error::Precondition("vertex count must be at least 1".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { vertices: n, cap: MAX_VERTICES });
    }
    if let Some(v) = LEVELS[n].get() {
        return Ok(v);
    }
    let level = if n == 1 {
        vec![CanonicalForm { n: 1, bits: 0 }]
    } else {
        // Every connected graph has a vertex whose removal leaves it connected, so
        // adding a vertex to each smaller class in every possible way covers all classes.
        let prev = connected_classes(n - 1)?;
        let found: BTreeSet<CanonicalForm> = prev
            .par_iter()
            .flat_map_iter(|c| {
                let base = c.to_graph().with_vertices(1);
                (1u32..1 << (n - 1)).map(move |mask| {
                    let mut g = base.clone();
                    for v in 0..n - 1 {
                        if mask >> v & 1 == 1 {
                            g = g.with_edge(v + 1, n, num_traits::One::one()).expect("new edge");
                        }
                    }
                    canonical_form(&g).expect("small graph")
                })
            })
            .collect();
        found.into_iter().collect()
    };
    Ok(LEVELS[n].get_or_init(|| level))
}

/// One representative per isomorphism class of connected graphs on `n` vertices,
/// ordered by canonical form.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_classes(n)?.iter().map(CanonicalForm::to_graph).collect())
}

/// Lookup from labelled bit strings to the class of every connected labelled graph
/// with at most `max_n` vertices.
pub struct ClassIndex {
    map: Vec<HashMap<u32, CanonicalForm>>,
}

impl ClassIndex {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > 7 {
            return Err(Error::TooLarge { vertices: max_n, cap: 7 });
        }
        let mut map = vec![HashMap::new(); max_n + 1];
        for (n, slot) in map.iter_mut().enumerate().skip(1) {
            let perms = permutations(n);
            for c in connected_classes(n)? {
                let adj = adjacency(&c.to_graph())?;
                for p in &perms {
                    slot.insert(bits_under(&adj, p), *c);
                }
            }
        }
        Ok(ClassIndex { map })
    }

    pub fn max_n(&self) -> usize {
        self.map.len() - 1
    }

    /// Class of the labelled graph on `n` vertices with adjacency string `bits`;
    /// `None` when that graph is disconnected.
    pub fn class_of_bits(&self, n: usize, bits: u32) -> Option<CanonicalForm> {
        self.map.get(n)?.get(&bits).copied()
    }

    pub fn class_of(&self, g: &Graph) -> Option<CanonicalForm> {
        self.class_of_bits(g.n(), labelled_bits(g).ok()?)
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, cycle};

    fn brute(g: &Graph) -> u32 {
        let adj = adjacency(g).unwrap();
        permutations(g.n()).iter().map(|p| bits_under(&adj, p)).min().unwrap()
    }

    #[test]
    fn pruned_search_matches_exhaustive_minimum() {
        for n in 1..=6 {
            for c in connected_classes(n).unwrap() {
                let g = c.to_graph();
                assert_eq!(canonical_form(&g).unwrap().bits, brute(&g));
            }
        }
    }

    #[test]
    fn relabelled_chain_has_same_label() {
        let a = chain(3);
        let b = Graph::unit(3, &[(1, 3), (3, 2)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn cycle_and_paw_differ() {
        let paw = Graph::unit(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert_ne!(canonical_form(&cycle(4)).unwrap(), canonical_form(&paw).unwrap());
    }

    #[test]
    fn counts_up_to_six() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_classes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            connected_classes(9),
            Err(Error::TooLarge { vertices: 9, cap: 8 })
        ));
        assert!(canonical_form(&chain(9)).is_err());
    }

    #[test]
    fn class_index_agrees_with_canonical_form() {
        let idx = ClassIndex::new(5).unwrap();
        let g = Graph::unit(5, &[(1, 5), (5, 2), (2, 4), (4, 3)]).unwrap();
        assert_eq!(idx.class_of(&g), Some(canonical_form(&chain(5)).unwrap()));
        let disconnected = Graph::unit(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(idx.class_of(&disconnected), None);
    }
}
