//! Eigenvalue-preserving and eigenvalue-shifting graph transformations.
//!
//! Each transformation returns a [`TransformRecord`] whose `verified` flag comes from
//! [`certify`], an edge-sum evaluation of `L x` that does not share code with the
//! constructors or with the matrix routines.

use crate::error::{Error, Result};
use crate::graph::{parse_rat, Graph};
use crate::quad::{int, QuadNum, Rat, Scalar};
use num_traits::{One, Signed};
use serde_json::{json, Value as Json};
use std::collections::BTreeSet;
use std::fmt;

/// An eigenvalue with an eigenvector, both over `Q` or one `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPair {
    pub value: QuadNum,
    pub vector: Vec<QuadNum>,
}

impl ExactPair {
    pub fn new(value: QuadNum, vector: Vec<QuadNum>) -> Self {
        ExactPair { value, vector }
    }

    pub fn integer(value: i64, vector: &[i64]) -> Self {
        ExactPair {
            value: QuadNum::from_int(value),
            vector: vector.iter().map(|&x| QuadNum::from_int(x)).collect(),
        }
    }

    pub fn is_zero_at(&self, v: usize) -> bool {
        self.vector[v - 1].is_zero()
    }

    pub fn soft_vertices(&self) -> Vec<usize> {
        (1..=self.vector.len()).filter(|&v| self.is_zero_at(v)).collect()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "lambda": self.value.to_string(),
            "vector": self.vector.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransformKind {
    Link,
    LinkJoin,
    Articulation,
    Soldering,
    RegularExpansion,
    SquareGadget,
    InsertSoftNodes,
    AddGlobalSoftNode,
    MatchingToggle,
    CartesianPair,
    ComplementPair,
}

impl TransformKind {
    pub const ALL: [TransformKind; 11] = [
        TransformKind::Link,
        TransformKind::LinkJoin,
        TransformKind::Articulation,
        TransformKind::Soldering,
        TransformKind::RegularExpansion,
        TransformKind::SquareGadget,
        TransformKind::InsertSoftNodes,
        TransformKind::AddGlobalSoftNode,
        TransformKind::MatchingToggle,
        TransformKind::CartesianPair,
        TransformKind::ComplementPair,
    ];

    /// Kinds that keep the eigenvalue.
    pub fn preserves(&self) -> bool {
        matches!(
            self,
            TransformKind::Link
                | TransformKind::LinkJoin
                | TransformKind::Articulation
                | TransformKind::Soldering
                | TransformKind::RegularExpansion
                | TransformKind::SquareGadget
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::Link => "link",
            TransformKind::LinkJoin => "link-join",
            TransformKind::Articulation => "articulation",
            TransformKind::Soldering => "soldering",
            TransformKind::RegularExpansion => "regular-expansion",
            TransformKind::SquareGadget => "square-gadget",
            TransformKind::InsertSoftNodes => "insert-soft-nodes",
            TransformKind::AddGlobalSoftNode => "add-global-soft-node",
            TransformKind::MatchingToggle => "matching-toggle",
            TransformKind::CartesianPair => "cartesian-pair",
            TransformKind::ComplementPair => "complement-pair",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The eigenvalue relation a transformation promises.
#[derive(Clone, Debug, PartialEq)]
pub enum Shift {
    Preserve,
    Add(QuadNum),
    /// `n - lambda`
    Complement(usize),
    /// `mu + nu`
    Sum,
}

#[derive(Clone, Debug)]
pub struct TransformRecord {
    pub kind: TransformKind,
    pub params: Json,
    pub input: Graph,
    pub input_pair: ExactPair,
    pub second: Option<(Graph, ExactPair)>,
    pub output: Graph,
    pub output_pair: ExactPair,
    pub shift: Shift,
    pub verified: bool,
    pub flags: Vec<String>,
}

impl TransformRecord {
    fn build(
        kind: TransformKind,
        params: Json,
        input: (&Graph, &ExactPair),
        second: Option<(&Graph, &ExactPair)>,
        mut output: Graph,
        output_pair: ExactPair,
        shift: Shift,
    ) -> Self {
        output.set_label(None);
        output.push_provenance(kind.name(), params.to_string());
        let mut flags = Vec::new();
        if !output.is_connected() {
            flags.push("output disconnected".to_string());
        }
        let mut r = TransformRecord {
            kind,
            params,
            input: input.0.clone(),
            input_pair: input.1.clone(),
            second: second.map(|(g, p)| (g.clone(), p.clone())),
            output,
            output_pair,
            shift,
            verified: false,
            flags,
        };
        r.verified = r.check();
        r
    }

    /// Re-derives the promised eigenvalue and re-multiplies the output vector.
    pub fn check(&self) -> bool {
        let lam = &self.input_pair.value;
        let expected = match &self.shift {
            Shift::Preserve => lam.clone(),
            Shift::Add(s) => lam.plus(s),
            Shift::Complement(n) => QuadNum::from_int(*n as i64).minus(lam),
            Shift::Sum => match &self.second {
                Some((_, p)) => lam.plus(&p.value),
                None => return false,
            },
        };
        expected == self.output_pair.value && certify(&self.output, &self.output_pair)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "kind": self.kind.name(),
            "params": self.params,
            "input": self.input.to_json(),
            "input_pair": self.input_pair.to_json(),
            "second_input": self.second.as_ref().map(|(g, p)| json!({"graph": g.to_json(), "pair": p.to_json()})),
            "output": self.output.to_json(),
            "output_pair": self.output_pair.to_json(),
            "verified": self.verified,
            "flags": self.flags,
        })
    }
}

/// `true` iff `x` is nonzero and `sum_j w_ij (x_i - x_j) = lambda x_i` at every vertex.
pub fn certify(g: &Graph, pair: &ExactPair) -> bool {
    let x = &pair.vector;
    if x.len() != g.n() || x.iter().all(Scalar::is_zero) {
        return false;
    }
    let mut acc: Vec<QuadNum> = vec![QuadNum::from_int(0); g.n()];
    for ((i, j), w) in g.edges() {
        let d = x[i - 1].minus(&x[j - 1]).scale(w);
        acc[i - 1] = acc[i - 1].plus(&d);
        acc[j - 1] = acc[j - 1].minus(&d);
    }
    acc.iter().zip(x).all(|(a, xi)| *a == pair.value.times(xi))
}

fn check_len(g: &Graph, p: &ExactPair) -> Result<()> {
    if p.vector.len() != g.n() {
        return Err(Error::Precondition(format!(
            "vector has {} entries, graph has {} vertices",
            p.vector.len(),
            g.n()
        )));
    }
    Ok(())
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v == 0 || v > g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

fn pre(msg: String) -> Error {
    Error::Precondition(msg)
}

/// Adds the edge `ij` if absent, deletes it otherwise. Needs `x_i = x_j`.
pub fn link_toggle(g: &Graph, p: &ExactPair, i: usize, j: usize) -> Result<TransformRecord> {
    check_len(g, p)?;
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if p.vector[i - 1] != p.vector[j - 1] {
        return Err(pre(format!("x_{i} != x_{j}")));
    }
    let (out, mode) = if g.has_edge(i, j) {
        (g.without_edge(i, j)?, "delete")
    } else {
        (g.with_edge(i, j, <Rat as One>::one())?, "add")
    };
    Ok(TransformRecord::build(
        TransformKind::Link,
        json!({"i": i, "j": j, "mode": mode}),
        (g, p),
        None,
        out,
        p.clone(),
        Shift::Preserve,
    ))
}

/// Disjoint union of two graphs sharing the eigenvalue, joined by the edge `i -- (n1 + j)`.
pub fn link_join(
    g1: &Graph,
    p1: &ExactPair,
    i: usize,
    g2: &Graph,
    p2: &ExactPair,
    j: usize,
) -> Result<TransformRecord> {
    check_len(g1, p1)?;
    check_len(g2, p2)?;
    check_vertex(g1, i)?;
    check_vertex(g2, j)?;
    if p1.value != p2.value {
        return Err(pre(format!("eigenvalues differ: {} and {}", p1.value, p2.value)));
    }
    let (a, b) = (&p1.vector[i - 1], &p2.vector[j - 1]);
    if a.is_zero() && b.is_zero() {
        return Err(pre("both joined entries are zero".into()));
    }
    let n1 = g1.n();
    let out = Graph::disjoint_union(g1, g2).with_edge(i, n1 + j, <Rat as One>::one())?;
    let mut y: Vec<QuadNum> = p1.vector.iter().map(|x| b.times(x)).collect();
    y.extend(p2.vector.iter().map(|x| a.times(x)));
    Ok(TransformRecord::build(
        TransformKind::LinkJoin,
        json!({"i": i, "j": j}),
        (g1, p1),
        Some((g2, p2)),
        out,
        ExactPair::new(p1.value.clone(), y),
        Shift::Preserve,
    ))
}

/// Pendant vertex `n + 1` on a soft vertex `i`, with edge weight `w`.
pub fn articulation(g: &Graph, p: &ExactPair, i: usize, w: Option<Rat>) -> Result<TransformRecord> {
    check_len(g, p)?;
    check_vertex(g, i)?;
    if !p.is_zero_at(i) {
        return Err(pre(format!("x_{i} is not zero")));
    }
    let w = w.unwrap_or_else(<Rat as One>::one);
    let out = g.with_vertices(1).with_edge(i, g.n() + 1, w.clone())?;
    let mut x = p.vector.clone();
    x.push(QuadNum::from_int(0));
    Ok(TransformRecord::build(
        TransformKind::Articulation,
        json!({"i": i, "weight": w.to_string()}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.clone(), x),
        Shift::Preserve,
    ))
}

/// Contracts two soft vertices that are neither adjacent nor share a neighbour.
pub fn soldering(g: &Graph, p: &ExactPair, i: usize, j: usize) -> Result<TransformRecord> {
    check_len(g, p)?;
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if !p.is_zero_at(i) || !p.is_zero_at(j) {
        return Err(pre(format!("x_{i} and x_{j} must both be zero")));
    }
    let (a, b) = (i.min(j), i.max(j));
    let out = g.contract(a, b)?;
    let mut x = p.vector.clone();
    x.remove(b - 1);
    Ok(TransformRecord::build(
        TransformKind::Soldering,
        json!({"i": a, "j": b}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.clone(), x),
        Shift::Preserve,
    ))
}

/// Unit-weight circulant `d`-regular graph on `k` vertices.
pub fn regular_graph(k: usize, d: usize) -> Result<Graph> {
    if k == 0 || d >= k.max(1) && !(k == 1 && d == 0) || (k * d) % 2 == 1 {
        return Err(pre(format!("no {d}-regular graph on {k} vertices")));
    }
    let mut edges = BTreeSet::new();
    for v in 0..k {
        for s in 1..=d / 2 {
            let u = (v + s) % k;
            edges.insert((v.min(u) + 1, v.max(u) + 1));
        }
        if d % 2 == 1 {
            let u = (v + k / 2) % k;
            edges.insert((v.min(u) + 1, v.max(u) + 1));
        }
    }
    Graph::unit(k, &edges.into_iter().collect::<Vec<_>>())
}

/// Degree of every vertex when all degrees agree.
pub fn regular_degree(c: &Graph) -> Option<usize> {
    let d = c.degree(1);
    (c.is_unit_weight() && (1..=c.n()).all(|v| c.degree(v) == d)).then_some(d)
}

/// Replaces `i` by the vertices of `cluster`, each tied to all former neighbours of `i`.
/// The first cluster vertex takes the number `i`, the others are appended.
fn expand_graph(g: &Graph, i: usize, cluster: &Graph) -> Result<(Graph, Vec<usize>)> {
    let nbrs = g.neighbors(i);
    let k = cluster.n();
    let mut out = g.clone();
    for &u in &nbrs {
        out = out.without_edge(i, u)?;
    }
    out = out.with_vertices(k - 1);
    let slot = |c: usize| if c == 1 { i } else { g.n() + c - 1 };
    for c in 1..=k {
        for &u in &nbrs {
            let w = g.weight(i, u).cloned().unwrap_or_else(<Rat as One>::one);
            out = out.with_edge(slot(c), u, w)?;
        }
    }
    for ((a, b), w) in cluster.edges() {
        out = out.with_edge(slot(a), slot(b), w.clone())?;
    }
    Ok((out, (1..=k).map(slot).collect()))
}

fn expansion_checks(g: &Graph, p: &ExactPair, i: usize, cluster: &Graph) -> Result<usize> {
    check_len(g, p)?;
    check_vertex(g, i)?;
    let nbrs = g.neighbors(i);
    if let Some(u) = nbrs.iter().find(|&&u| !p.is_zero_at(u)) {
        return Err(pre(format!("neighbour {u} of {i} is not soft")));
    }
    if nbrs.iter().any(|&u| !g.weight(i, u).is_some_and(One::is_one)) {
        return Err(pre(format!("edges at {i} must have unit weight")));
    }
    let d = regular_degree(cluster).ok_or_else(|| pre("cluster is not regular".into()))?;
    if p.value != QuadNum::from_int(nbrs.len() as i64) {
        return Err(pre(format!("lambda = {} but {i} has {} soft neighbours", p.value, nbrs.len())));
    }
    Ok(d)
}

/// Expansion with the uniform values `x_i / k` on the cluster.
pub fn regular_expansion(g: &Graph, p: &ExactPair, i: usize, cluster: &Graph) -> Result<TransformRecord> {
    let k = cluster.n();
    let share = p.vector[i - 1].scale(&Rat::new(1.into(), (k as i64).into()));
    expansion_with_values(g, p, i, cluster, &vec![share; k])
}

/// Expansion with caller-chosen cluster values; they must satisfy [`expansion_conditions`].
pub fn expansion_with_values(
    g: &Graph,
    p: &ExactPair,
    i: usize,
    cluster: &Graph,
    values: &[QuadNum],
) -> Result<TransformRecord> {
    let d = expansion_checks(g, p, i, cluster)?;
    if values.len() != cluster.n() {
        return Err(pre("one value per cluster vertex required".into()));
    }
    if !expansion_conditions(cluster, values, &p.vector[i - 1]) {
        return Err(pre("cluster values violate the expansion conditions".into()));
    }
    let (out, slots) = expand_graph(g, i, cluster)?;
    let mut x = p.vector.clone();
    x.resize(out.n(), QuadNum::from_int(0));
    for (s, v) in slots.iter().zip(values) {
        x[s - 1] = v.clone();
    }
    Ok(TransformRecord::build(
        TransformKind::RegularExpansion,
        json!({"i": i, "k": cluster.n(), "d": d,
               "values": values.iter().map(ToString::to_string).collect::<Vec<_>>()}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.clone(), x),
        Shift::Preserve,
    ))
}

/// `d x'_j = sum of x' over the cluster neighbours of j` for every cluster vertex, and
/// the cluster values sum to `x_i`.
pub fn expansion_conditions(cluster: &Graph, values: &[QuadNum], x_i: &QuadNum) -> bool {
    let Some(d) = regular_degree(cluster) else {
        return false;
    };
    let local = (1..=cluster.n()).all(|j| {
        let s = cluster
            .neighbors(j)
            .iter()
            .fold(QuadNum::from_int(0), |a, &u| a.plus(&values[u - 1]));
        values[j - 1].scale(&int(d as i64)) == s
    });
    let total = values.iter().fold(QuadNum::from_int(0), |a, v| a.plus(v));
    local && &total == x_i
}

/// Replaces the edge `ij` (with `x_i = -x_j`) by the square `i-k-j-l-i` through two new
/// soft vertices. Weights: `w_ik = w_kj = 2 alpha w_ij`, `w_il = w_lj = 2 (1 - alpha) w_ij`.
pub fn square_gadget(g: &Graph, p: &ExactPair, i: usize, j: usize, alpha: &Rat) -> Result<TransformRecord> {
    check_len(g, p)?;
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    let w = g.weight(i, j).cloned().ok_or_else(|| pre(format!("edge {i}-{j} is absent")))?;
    if p.vector[i - 1] != p.vector[j - 1].negated() {
        return Err(pre(format!("x_{i} != -x_{j}")));
    }
    if !alpha.is_positive() || alpha >= &<Rat as One>::one() {
        return Err(pre("alpha must lie strictly between 0 and 1".into()));
    }
    let two = int(2);
    let wk = &two * alpha * &w;
    let wl = &two * (<Rat as One>::one() - alpha) * &w;
    let (k, l) = (g.n() + 1, g.n() + 2);
    let out = g
        .without_edge(i, j)?
        .with_vertices(2)
        .with_edge(i, k, wk.clone())?
        .with_edge(k, j, wk)?
        .with_edge(i, l, wl.clone())?
        .with_edge(l, j, wl)?;
    let mut x = p.vector.clone();
    x.push(QuadNum::from_int(0));
    x.push(QuadNum::from_int(0));
    Ok(TransformRecord::build(
        TransformKind::SquareGadget,
        json!({"i": i, "j": j, "alpha": alpha.to_string()}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.clone(), x),
        Shift::Preserve,
    ))
}

/// Checks that `pairs` are disjoint, cover exactly the nonzero entries and pair opposite values.
pub fn check_alternate_pairing(p: &ExactPair, pairs: &[(usize, usize)]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &(i, j) in pairs {
        for v in [i, j] {
            if v == 0 || v > p.vector.len() {
                return Err(Error::VertexOutOfRange { vertex: v, n: p.vector.len() });
            }
            if !seen.insert(v) {
                return Err(pre(format!("vertex {v} is paired twice")));
            }
        }
        if p.is_zero_at(i) || p.vector[i - 1] != p.vector[j - 1].negated() {
            return Err(pre(format!("pair {i}-{j} does not carry opposite nonzero values")));
        }
    }
    if let Some(v) = (1..=p.vector.len()).find(|&v| !p.is_zero_at(v) && !seen.contains(&v)) {
        return Err(pre(format!("nonzero vertex {v} is unpaired")));
    }
    Ok(())
}

/// `k` new soft vertices per pair, each adjacent to both members. Shifts by `k`.
pub fn insert_soft_nodes(g: &Graph, p: &ExactPair, pairs: &[(usize, usize)], k: usize) -> Result<TransformRecord> {
    check_len(g, p)?;
    if k == 0 {
        return Err(pre("k must be positive".into()));
    }
    check_alternate_pairing(p, pairs)?;
    let (out, x) = insert_with_weight(g, p, pairs, k, &<Rat as One>::one())?;
    Ok(TransformRecord::build(
        TransformKind::InsertSoftNodes,
        json!({"k": k, "pairs": pairs}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.plus(&QuadNum::from_int(k as i64)), x),
        Shift::Add(QuadNum::from_int(k as i64)),
    ))
}

/// One soft vertex per pair joined with weight `w` to both members. Shifts by `w`.
pub fn insert_weighted_soft_node(g: &Graph, p: &ExactPair, pairs: &[(usize, usize)], w: &Rat) -> Result<TransformRecord> {
    check_len(g, p)?;
    if !w.is_positive() {
        return Err(pre("weight must be positive".into()));
    }
    check_alternate_pairing(p, pairs)?;
    let (out, x) = insert_with_weight(g, p, pairs, 1, w)?;
    let s = QuadNum::from_rat(w.clone());
    Ok(TransformRecord::build(
        TransformKind::InsertSoftNodes,
        json!({"k": 1, "weight": w.to_string(), "pairs": pairs}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.plus(&s), x),
        Shift::Add(s),
    ))
}

fn insert_with_weight(
    g: &Graph,
    p: &ExactPair,
    pairs: &[(usize, usize)],
    k: usize,
    w: &Rat,
) -> Result<(Graph, Vec<QuadNum>)> {
    let mut out = g.with_vertices(pairs.len() * k);
    let mut next = g.n() + 1;
    for &(i, j) in pairs {
        for _ in 0..k {
            out = out.with_edge(i, next, w.clone())?.with_edge(j, next, w.clone())?;
            next += 1;
        }
    }
    let mut x = p.vector.clone();
    x.resize(out.n(), QuadNum::from_int(0));
    Ok((out, x))
}

/// New vertex adjacent to every vertex. Shifts a nonzero eigenvalue by 1.
pub fn add_global_soft_node(g: &Graph, p: &ExactPair) -> Result<TransformRecord> {
    check_len(g, p)?;
    if p.value.is_zero() {
        return Err(pre("eigenvalue must be nonzero".into()));
    }
    let n = g.n();
    let mut out = g.with_vertices(1);
    for v in 1..=n {
        out = out.with_edge(v, n + 1, <Rat as One>::one())?;
    }
    let mut x = p.vector.clone();
    x.push(QuadNum::from_int(0));
    Ok(TransformRecord::build(
        TransformKind::AddGlobalSoftNode,
        json!({}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.plus(&QuadNum::from_int(1)), x),
        Shift::Add(QuadNum::from_int(1)),
    ))
}

/// Adds (`add = true`) or deletes an alternate perfect matching. Shifts by +2 or -2.
pub fn matching_toggle(g: &Graph, p: &ExactPair, matching: &[(usize, usize)], add: bool) -> Result<TransformRecord> {
    check_len(g, p)?;
    check_alternate_pairing(p, matching)?;
    let mut out = g.clone();
    for &(i, j) in matching {
        if add {
            out = out.with_edge(i, j, <Rat as One>::one())?;
        } else {
            if !g.weight(i, j).is_some_and(One::is_one) {
                return Err(pre(format!("matching edge {i}-{j} is not a unit edge of the graph")));
            }
            out = out.without_edge(i, j)?;
        }
    }
    let s = QuadNum::from_int(if add { 2 } else { -2 });
    Ok(TransformRecord::build(
        TransformKind::MatchingToggle,
        json!({"mode": if add { "add" } else { "delete" }, "pairs": matching}),
        (g, p),
        None,
        out,
        ExactPair::new(p.value.plus(&s), p.vector.clone()),
        Shift::Add(s),
    ))
}

/// Kronecker product eigenvector on `g` □ `h` for `mu + nu`.
pub fn product_eigenpair(g: &Graph, p: &ExactPair, h: &Graph, q: &ExactPair) -> Result<TransformRecord> {
    check_len(g, p)?;
    check_len(h, q)?;
    let radicands: BTreeSet<i64> = p.vector.iter().chain(&q.vector).chain([&p.value, &q.value])
        .map(|x| x.d).filter(|&d| d != 0).collect();
    if radicands.len() > 1 {
        return Err(pre("factors live in different quadratic fields".into()));
    }
    let out = Graph::cartesian_product(g, h)?;
    let x: Vec<QuadNum> = p.vector.iter().flat_map(|a| q.vector.iter().map(move |b| a.times(b))).collect();
    Ok(TransformRecord::build(
        TransformKind::CartesianPair,
        json!({"second_n": h.n()}),
        (g, p),
        Some((h, q)),
        out,
        ExactPair::new(p.value.plus(&q.value), x),
        Shift::Sum,
    ))
}

/// Same vector on the complement, for `n - lambda`.
pub fn complement_eigenpair(g: &Graph, p: &ExactPair) -> Result<TransformRecord> {
    check_len(g, p)?;
    if p.value.is_zero() {
        return Err(pre("eigenvalue must be nonzero".into()));
    }
    let out = g.complement()?;
    let n = g.n();
    let value = QuadNum::from_int(n as i64).minus(&p.value);
    let degenerate = value.is_zero();
    let mut r = TransformRecord::build(
        TransformKind::ComplementPair,
        json!({"n": n}),
        (g, p),
        None,
        out,
        ExactPair::new(value, p.vector.clone()),
        Shift::Complement(n),
    );
    if degenerate {
        r.flags.push("degenerate: complement eigenvalue is 0".into());
    }
    Ok(r)
}

/// Every way to split the nonzero entries into pairs of opposite values.
/// At most 12 nonzero entries are searched.
pub fn alternate_pairings(p: &ExactPair) -> Result<Vec<Vec<(usize, usize)>>> {
    let nz: Vec<usize> = (1..=p.vector.len()).filter(|&v| !p.is_zero_at(v)).collect();
    if nz.len() > 12 {
        return Err(pre(format!("{} nonzero entries exceed the pairing search limit 12", nz.len())));
    }
    let mut out = Vec::new();
    pairings_rec(p, &nz, &mut vec![false; nz.len()], &mut Vec::new(), &mut out);
    Ok(out)
}

fn pairings_rec(
    p: &ExactPair,
    nz: &[usize],
    used: &mut Vec<bool>,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let Some(a) = (0..nz.len()).find(|&k| !used[k]) else {
        out.push(cur.clone());
        return;
    };
    used[a] = true;
    for b in a + 1..nz.len() {
        if used[b] || p.vector[nz[a] - 1] != p.vector[nz[b] - 1].negated() {
            continue;
        }
        used[b] = true;
        cur.push((nz[a], nz[b]));
        pairings_rec(p, nz, used, cur, out);
        cur.pop();
        used[b] = false;
    }
    used[a] = false;
}

/// One line of a transformation script.
#[derive(Clone, Debug, PartialEq)]
pub enum ScriptOp {
    Link(usize, usize),
    Art(usize),
    Solder(usize, usize),
    Expand { i: usize, k: usize, d: usize },
    Square { i: usize, j: usize, alpha: Rat },
    Insert { k: usize, pairs: Vec<(usize, usize)> },
    AddSoft,
    Match { add: bool, pairs: Vec<(usize, usize)> },
    Complement,
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('-').ok_or_else(|| Error::Parse(format!("pair '{s}' is not i-j")))?;
    let p = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex '{t}'")));
    Ok((p(a)?, p(b)?))
}

/// Parses a script; blank lines and `#` comments are ignored.
pub fn parse_script(text: &str) -> Result<Vec<ScriptOp>> {
    let mut ops = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        let num = |k: usize| -> Result<usize> {
            t.get(k)
                .ok_or_else(|| Error::Parse(format!("'{line}': missing argument {k}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("'{line}': argument {k} is not a number")))
        };
        let op = match t[0].to_ascii_uppercase().as_str() {
            "LINK" => ScriptOp::Link(num(1)?, num(2)?),
            "ART" => ScriptOp::Art(num(1)?),
            "SOLDER" => ScriptOp::Solder(num(1)?, num(2)?),
            "EXPAND" => ScriptOp::Expand { i: num(1)?, k: num(2)?, d: num(3)? },
            "SQUARE" => ScriptOp::Square {
                i: num(1)?,
                j: num(2)?,
                alpha: parse_rat(t.get(3).copied().unwrap_or("1/2"))?,
            },
            "INSERT" => ScriptOp::Insert {
                k: num(1)?,
                pairs: t[2..].iter().map(|s| parse_pair(s)).collect::<Result<_>>()?,
            },
            "ADDSOFT" => ScriptOp::AddSoft,
            "MATCH" => ScriptOp::Match {
                add: match t.get(1) {
                    Some(&"+") => true,
                    Some(&"-") => false,
                    _ => return Err(Error::Parse(format!("'{line}': MATCH needs + or -"))),
                },
                pairs: t[2..].iter().map(|s| parse_pair(s)).collect::<Result<_>>()?,
            },
            "COMPLEMENT" => ScriptOp::Complement,
            other => return Err(Error::Parse(format!("unknown operation '{other}'"))),
        };
        ops.push(op);
    }
    Ok(ops)
}

pub fn apply_op(g: &Graph, p: &ExactPair, op: &ScriptOp) -> Result<TransformRecord> {
    match op {
        ScriptOp::Link(i, j) => link_toggle(g, p, *i, *j),
        ScriptOp::Art(i) => articulation(g, p, *i, None),
        ScriptOp::Solder(i, j) => soldering(g, p, *i, *j),
        ScriptOp::Expand { i, k, d } => regular_expansion(g, p, *i, &regular_graph(*k, *d)?),
        ScriptOp::Square { i, j, alpha } => square_gadget(g, p, *i, *j, alpha),
        ScriptOp::Insert { k, pairs } => insert_soft_nodes(g, p, pairs, *k),
        ScriptOp::AddSoft => add_global_soft_node(g, p),
        ScriptOp::Match { add, pairs } => matching_toggle(g, p, pairs, *add),
        ScriptOp::Complement => complement_eigenpair(g, p),
    }
}

/// Applies the operations in order, each to the previous output.
pub fn run_script(g: &Graph, p: &ExactPair, ops: &[ScriptOp]) -> Result<Vec<TransformRecord>> {
    let mut out: Vec<TransformRecord> = Vec::new();
    for op in ops {
        let (cg, cp) = match out.last() {
            Some(r) => (&r.output, &r.output_pair),
            None => (g, p),
        };
        out.push(apply_op(cg, cp, op)?);
    }
    Ok(out)
}

/// Bounds for [`single_steps`].
#[derive(Clone, Debug)]
pub struct StepBounds {
    pub max_cluster: usize,
    pub insert_k: usize,
    pub alphas: Vec<Rat>,
    pub with_shifts: bool,
}

impl Default for StepBounds {
    fn default() -> Self {
        StepBounds {
            max_cluster: 3,
            insert_k: 2,
            alphas: vec![Rat::new(1.into(), 2.into())],
            with_shifts: true,
        }
    }
}

/// Every single application of a unary transformation to `(g, p)` whose preconditions
/// hold, within `bounds`.
pub fn single_steps(g: &Graph, p: &ExactPair, bounds: &StepBounds) -> Result<Vec<TransformRecord>> {
    let n = g.n();
    let mut out = Vec::new();
    for j in 1..=n {
        for i in 1..j {
            if p.vector[i - 1] == p.vector[j - 1] {
                out.push(link_toggle(g, p, i, j)?);
            }
        }
    }
    for i in p.soft_vertices() {
        out.push(articulation(g, p, i, None)?);
    }
    let soft = p.soft_vertices();
    for (a, &i) in soft.iter().enumerate() {
        for &j in &soft[a + 1..] {
            if g.contract(i, j).is_ok() {
                out.push(soldering(g, p, i, j)?);
            }
        }
    }
    for i in 1..=n {
        let nb = g.neighbors(i);
        if nb.is_empty() || nb.iter().any(|&u| !p.is_zero_at(u)) || p.is_zero_at(i) {
            continue;
        }
        if p.value != QuadNum::from_int(nb.len() as i64) || !g.is_unit_weight() {
            continue;
        }
        for k in 2..=bounds.max_cluster {
            for d in 0..k {
                if let Ok(c) = regular_graph(k, d) {
                    out.push(regular_expansion(g, p, i, &c)?);
                }
            }
        }
    }
    for ((i, j), _) in g.edges() {
        if p.vector[i - 1] == p.vector[j - 1].negated() && !p.is_zero_at(i) {
            for a in &bounds.alphas {
                out.push(square_gadget(g, p, i, j, a)?);
            }
        }
    }
    if bounds.with_shifts && p.vector.iter().any(|x| !x.is_zero()) {
        let pairings = alternate_pairings(p)?;
        for pr in &pairings {
            for k in 1..=bounds.insert_k {
                out.push(insert_soft_nodes(g, p, pr, k)?);
            }
            if pr.iter().all(|&(i, j)| !g.has_edge(i, j)) {
                out.push(matching_toggle(g, p, pr, true)?);
            }
            if pr.iter().all(|&(i, j)| g.weight(i, j).is_some_and(One::is_one)) {
                out.push(matching_toggle(g, p, pr, false)?);
            }
        }
        if !p.value.is_zero() {
            out.push(add_global_soft_node(g, p)?);
            if g.is_unit_weight() {
                out.push(complement_eigenpair(g, p)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, clique, cycle, star};
    use crate::quad::rat;

    fn q(v: &[i64]) -> Vec<QuadNum> {
        v.iter().map(|&x| QuadNum::from_int(x)).collect()
    }

    #[test]
    fn link_examples() {
        let r = link_toggle(&chain(3), &ExactPair::integer(3, &[1, -2, 1]), 1, 3).unwrap();
        assert!(r.verified);
        assert_eq!(r.output, clique(3));
        let r = link_toggle(&cycle(4), &ExactPair::integer(2, &[1, 0, -1, 0]), 2, 4).unwrap();
        assert!(r.verified);
        assert_eq!(r.output.m(), 5);
        assert!(link_toggle(&chain(3), &ExactPair::integer(1, &[1, 0, -1]), 1, 2).is_err());
        let back = link_toggle(&r.output, &r.output_pair, 2, 4).unwrap();
        assert_eq!(back.output, cycle(4));
    }

    #[test]
    fn join_examples() {
        let p = ExactPair::integer(1, &[1, 0, -1]);
        let r = link_join(&chain(3), &p, 1, &chain(3), &p, 1).unwrap();
        assert!(r.verified);
        assert_eq!(r.output_pair.vector, q(&[1, 0, -1, 1, 0, -1]));
        assert!(link_join(&chain(3), &p, 2, &chain(3), &p, 2).is_err());
        let k = ExactPair::integer(3, &[1, 0, -1]);
        assert!(link_join(&clique(3), &k, 1, &clique(3), &k, 3).unwrap().verified);
    }

    #[test]
    fn articulation_examples() {
        let r = articulation(&chain(3), &ExactPair::integer(1, &[1, 0, -1]), 2, None).unwrap();
        assert!(r.verified);
        assert!(crate::canon::is_isomorphic(&r.output, &star(4)).unwrap());
        let c4 = ExactPair::integer(2, &[1, 0, -1, 0]);
        assert!(articulation(&cycle(4), &c4, 2, Some(rat(5, 3))).unwrap().verified);
        assert!(articulation(&cycle(4), &c4, 1, None).is_err());
    }

    #[test]
    fn soldering_examples() {
        let two = Graph::disjoint_union(&chain(3), &chain(3));
        let p = ExactPair::integer(1, &[1, 0, -1, 1, 0, -1]);
        let r = soldering(&two, &p, 2, 5).unwrap();
        assert!(r.verified);
        assert!(crate::canon::is_isomorphic(&r.output, &star(5)).unwrap());
        let cc = Graph::disjoint_union(&cycle(4), &cycle(4));
        let p = ExactPair::integer(2, &[1, 0, -1, 0, 1, 0, -1, 0]);
        let r = soldering(&cc, &p, 2, 6).unwrap();
        assert!(r.verified && r.output.n() == 7);
        let p = ExactPair::integer(2, &[0, 1, 0, -1]);
        assert!(soldering(&cycle(4), &p, 1, 3).is_err());
    }

    #[test]
    fn expansion_examples() {
        let p = ExactPair::integer(1, &[1, 0, -1]);
        let r = regular_expansion(&chain(3), &p, 1, &regular_graph(2, 0).unwrap()).unwrap();
        assert!(r.verified);
        assert_eq!(r.output_pair.vector[0], QuadNum::from_rat(rat(1, 2)));
        assert_eq!(r.output_pair.vector[3], QuadNum::from_rat(rat(1, 2)));
        let id = regular_expansion(&chain(3), &p, 1, &regular_graph(1, 0).unwrap()).unwrap();
        assert_eq!(id.output, chain(3));
        assert!(regular_expansion(&chain(3), &p, 2, &regular_graph(2, 0).unwrap()).is_err());
    }

    #[test]
    fn expansion_from_two_soft_nodes_with_triangle_and_square() {
        // C4 at 2: vertex 1 sits between the soft vertices 2 and 4.
        let p = ExactPair::integer(2, &[1, 0, -1, 0]);
        let cluster = Graph::disjoint_union(&cycle(3), &cycle(4));
        let (t, s) = (rat(1, 5), rat(1, 10));
        assert_eq!(int(3) * &t + int(4) * &s, int(1));
        let mut vals = vec![QuadNum::from_rat(t); 3];
        vals.extend(vec![QuadNum::from_rat(s); 4]);
        let r = expansion_with_values(&cycle(4), &p, 1, &cluster, &vals).unwrap();
        assert!(r.verified);
        let bad = vec![QuadNum::from_rat(rat(1, 7)); 6].into_iter().chain([QuadNum::from_int(0)]).collect::<Vec<_>>();
        assert!(expansion_with_values(&cycle(4), &p, 1, &cluster, &bad).is_err());
    }

    #[test]
    fn square_examples() {
        let r = square_gadget(&clique(2), &ExactPair::integer(2, &[1, -1]), 1, 2, &rat(1, 2)).unwrap();
        assert!(r.verified);
        assert!(r.output.is_unit_weight());
        assert!(crate::canon::is_isomorphic(&r.output, &cycle(4)).unwrap());
        let r = square_gadget(&clique(2), &ExactPair::integer(2, &[1, -1]), 1, 2, &rat(1, 3)).unwrap();
        assert!(r.verified);
        assert!(square_gadget(&clique(2), &ExactPair::integer(0, &[1, 1]), 1, 2, &rat(1, 2)).is_err());
    }

    #[test]
    fn shift_examples() {
        let r = insert_soft_nodes(&clique(2), &ExactPair::integer(2, &[1, -1]), &[(1, 2)], 1).unwrap();
        assert!(r.verified && r.output == clique(3));
        let r = insert_soft_nodes(&cycle(4), &ExactPair::integer(2, &[1, 0, -1, 0]), &[(1, 3)], 2).unwrap();
        assert!(r.verified && r.output_pair.value == QuadNum::from_int(4));
        let r = insert_weighted_soft_node(&clique(2), &ExactPair::integer(2, &[1, -1]), &[(1, 2)], &rat(1, 2)).unwrap();
        assert!(r.verified && r.output_pair.value == QuadNum::from_rat(rat(5, 2)));
        let r = add_global_soft_node(&star(4), &ExactPair::integer(1, &[0, 1, -1, 0])).unwrap();
        assert!(r.verified && r.output_pair.value == QuadNum::from_int(2));
        let r = add_global_soft_node(&chain(3), &ExactPair::integer(3, &[1, -2, 1])).unwrap();
        assert!(r.verified && r.output_pair.value == QuadNum::from_int(4));
        let two = Graph::disjoint_union(&clique(2), &clique(2));
        let p = ExactPair::integer(2, &[1, -1, 1, -1]);
        let r = matching_toggle(&two, &p, &[(1, 4), (2, 3)], true).unwrap();
        assert!(r.verified && crate::canon::is_isomorphic(&r.output, &cycle(4)).unwrap());
        let back = matching_toggle(&r.output, &r.output_pair, &[(1, 4), (2, 3)], false).unwrap();
        assert!(back.verified && back.output == two);
        assert!(matching_toggle(&two, &p, &[(1, 4)], true).is_err());
    }

    #[test]
    fn product_and_complement() {
        let p = ExactPair::integer(1, &[1, 0, -1]);
        let r = product_eigenpair(&chain(3), &p, &chain(3), &ExactPair::integer(3, &[1, -2, 1])).unwrap();
        assert!(r.verified && r.output_pair.value == QuadNum::from_int(4));
        let k4 = complement_eigenpair(&clique(4), &ExactPair::integer(4, &[1, -1, 0, 0])).unwrap();
        assert!(k4.verified);
        assert!(k4.flags.iter().any(|f| f.starts_with("degenerate")));
        let l = QuadNum::new(rat(5, 2), rat(-1, 2), 5);
        let v = crate::spectrum::exact_eigenspace(&cycle(5), &l).unwrap();
        let r = complement_eigenpair(&cycle(5), &ExactPair::new(l, v[0].clone())).unwrap();
        assert!(r.verified);
        assert_eq!(r.output_pair.value, QuadNum::new(rat(5, 2), rat(1, 2), 5));
    }

    #[test]
    fn scripts() {
        let ops = parse_script("ADDSOFT\n# comment\nINSERT 1 1-2\nMATCH - 1-2\n").unwrap();
        assert_eq!(ops.len(), 3);
        let recs = run_script(&clique(2), &ExactPair::integer(2, &[1, -1]), &ops[..1]).unwrap();
        assert!(recs[0].verified && recs[0].output == clique(3));
        assert!(parse_script("FROB 1").is_err());
        assert!(parse_script("MATCH * 1-2").is_err());
        assert_eq!(
            parse_script("SQUARE 1 2 1/3").unwrap(),
            vec![ScriptOp::Square { i: 1, j: 2, alpha: rat(1, 3) }]
        );
    }

    #[test]
    fn regular_graphs() {
        assert_eq!(regular_graph(4, 2).unwrap(), cycle(4));
        assert_eq!(regular_graph(4, 3).unwrap(), clique(4));
        assert!(regular_graph(3, 1).is_err());
        assert!(regular_graph(3, 3).is_err());
        assert_eq!(regular_graph(1, 0).unwrap().n(), 1);
    }

    #[test]
    fn pairing_search() {
        let p = ExactPair::integer(2, &[1, -1, 1, -1]);
        assert_eq!(alternate_pairings(&p).unwrap().len(), 2);
    }
}
