//! Block decomposition of a subgraph embedding and the Schur complement `Delta`.
//!
//! For `G` inside `G''` with remainder `G'`, the host Laplacian splits as
//! `diag(L, L') + delta`, where `delta = (a, -b; -b^T, c)` couples the `p` boundary
//! vertices of `G` to the `p'` boundary vertices of `G'`. Eliminating the boundary of
//! `G` leaves `(Delta_bar + L') X' = lambda X'` with `Delta = c - b^T a^-1 b`.

use crate::canon::{canonical_form, connected_classes, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobi::symmetric_eigen;
use crate::matrix::Matrix;
use crate::quad::{rat_to_f64, QuadNum, Rat, Scalar};
use crate::spectrum::{analyze_spectrum, EigenVector, Value};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value as Json};
use std::collections::BTreeMap;
use std::fmt;

/// Tolerance for the numeric shared-eigenvector fallback.
pub const SHARED_TOL: f64 = 1e-9;

fn rq(x: &Rat) -> QuadNum {
    QuadNum::from_rat(x.clone())
}

fn zero() -> Rat {
    <Rat as Scalar>::zero()
}

pub fn matrix_json(m: &Matrix<Rat>) -> Json {
    Json::Array(
        m.to_rows()
            .iter()
            .map(|r| Json::Array(r.iter().map(|x| json!([x.numer().to_string(), x.denom().to_string()])).collect()))
            .collect(),
    )
}

/// Blocks of `L''` for the split `V'' = V(G) + V(G')`.
///
/// `inner` lists the host labels of `G` with its boundary last; `outer` lists those of
/// `G'` with its boundary first. All matrices use these orders.
#[derive(Clone, Debug)]
pub struct EmbeddingSplit {
    pub host: Graph,
    pub inner: Vec<usize>,
    pub outer: Vec<usize>,
    pub p: usize,
    pub p_prime: usize,
    pub l: Matrix<Rat>,
    pub l_prime: Matrix<Rat>,
    pub a: Matrix<Rat>,
    pub b: Matrix<Rat>,
    pub c: Matrix<Rat>,
}

pub fn split_embedding(host: &Graph, sub: &[usize]) -> Result<EmbeddingSplit> {
    let n2 = host.n();
    let mut in_sub = vec![false; n2 + 1];
    for &v in sub {
        if v == 0 || v > n2 {
            return Err(Error::VertexOutOfRange { vertex: v, n: n2 });
        }
        if in_sub[v] {
            return Err(Error::Precondition(format!("vertex {v} listed twice")));
        }
        in_sub[v] = true;
    }
    if sub.is_empty() || sub.len() == n2 {
        return Err(Error::Precondition("both sides of the split must be nonempty".into()));
    }
    let crosses = |v: usize| host.neighbors(v).iter().any(|&u| in_sub[u] != in_sub[v]);
    let mut g_side: Vec<usize> = sub.to_vec();
    g_side.sort_unstable();
    let rest: Vec<usize> = (1..=n2).filter(|&v| !in_sub[v]).collect();
    let (g_bd, g_int): (Vec<usize>, Vec<usize>) = g_side.iter().partition(|&&v| crosses(v));
    let (o_bd, o_int): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&v| crosses(v));
    if g_bd.is_empty() {
        return Err(Error::Precondition("no edge joins the two sides".into()));
    }
    let inner: Vec<usize> = g_int.iter().chain(&g_bd).copied().collect();
    let outer: Vec<usize> = o_bd.iter().chain(&o_int).copied().collect();
    let g = host.induced(&inner);
    if !g.is_connected() {
        return Err(Error::Precondition("the embedded subgraph is disconnected".into()));
    }
    let (p, pp) = (g_bd.len(), o_bd.len());
    let mut a = Matrix::zeros(p, p);
    let mut b = Matrix::zeros(p, pp);
    let mut c = Matrix::zeros(pp, pp);
    for (k, &u) in g_bd.iter().enumerate() {
        for (j, &v) in o_bd.iter().enumerate() {
            if let Some(w) = host.weight(u, v) {
                b.set(k, j, w.clone());
                a.set(k, k, a.get(k, k) + w);
                c.set(j, j, c.get(j, j) + w);
            }
        }
    }
    Ok(EmbeddingSplit {
        host: host.clone(),
        l: g.laplacian().matrix().clone(),
        l_prime: host.induced(&outer).laplacian().matrix().clone(),
        inner,
        outer,
        p,
        p_prime: pp,
        a,
        b,
        c,
    })
}

impl EmbeddingSplit {
    pub fn n(&self) -> usize {
        self.inner.len()
    }

    pub fn n_prime(&self) -> usize {
        self.outer.len()
    }

    pub fn inner_graph(&self) -> Graph {
        self.host.induced(&self.inner)
    }

    pub fn outer_graph(&self) -> Graph {
        self.host.induced(&self.outer)
    }

    /// `delta = (a, -b; -b^T, c)`.
    pub fn delta(&self) -> Matrix<Rat> {
        let (p, pp) = (self.p, self.p_prime);
        let mut d = Matrix::zeros(p + pp, p + pp);
        for i in 0..p {
            d.set(i, i, self.a.get(i, i).clone());
            for j in 0..pp {
                d.set(i, p + j, -self.b.get(i, j));
                d.set(p + j, i, -self.b.get(i, j));
            }
        }
        for j in 0..pp {
            d.set(p + j, p + j, self.c.get(j, j).clone());
        }
        d
    }

    /// `L''` with rows and columns in the order `inner ++ outer`.
    pub fn host_laplacian_ordered(&self) -> Matrix<Rat> {
        self.host.induced(&[self.inner.clone(), self.outer.clone()].concat()).laplacian().matrix().clone()
    }

    /// `diag(L, L')` plus the bordered `delta`.
    pub fn reconstruct(&self) -> Matrix<Rat> {
        let (n, n1) = (self.n(), self.n_prime());
        let mut m = Matrix::zeros(n + n1, n + n1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.l.get(i, j).clone());
            }
        }
        for i in 0..n1 {
            for j in 0..n1 {
                m.set(n + i, n + j, self.l_prime.get(i, j).clone());
            }
        }
        let d = self.delta();
        let off = n - self.p;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let v = m.get(off + i, off + j) + d.get(i, j);
                m.set(off + i, off + j, v);
            }
        }
        m
    }

    /// `a 1 = b 1` and `c 1 = b^T 1`, with `a` and `c` diagonal.
    pub fn abc_holds(&self) -> bool {
        let diag = |m: &Matrix<Rat>| (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j) == &zero()));
        let rows = (0..self.p).all(|i| self.a.get(i, i) == &self.b.row(i).iter().fold(zero(), |s, x| s + x));
        let bt = self.b.transpose();
        let cols = (0..self.p_prime).all(|j| self.c.get(j, j) == &bt.row(j).iter().fold(zero(), |s, x| s + x));
        diag(&self.a) && diag(&self.c) && rows && cols
    }

    pub fn delta_is_laplacian(&self) -> bool {
        is_generalized_laplacian(&self.delta())
    }

    /// `Delta = c - b^T a^-1 b`.
    pub fn schur(&self) -> Matrix<Rat> {
        let ainv = self.a.inverse().expect("a is a positive diagonal matrix");
        let bt = self.b.transpose();
        self.c.sub(&bt.mul(&ainv).mul(&self.b))
    }

    /// `Delta` padded with zeros to `n' x n'`.
    pub fn delta_bar(&self) -> Matrix<Rat> {
        let d = self.schur();
        let mut m = Matrix::zeros(self.n_prime(), self.n_prime());
        for i in 0..self.p_prime {
            for j in 0..self.p_prime {
                m.set(i, j, d.get(i, j).clone());
            }
        }
        m
    }

    /// Every boundary vertex of `G` has exactly one neighbour in `G'`.
    pub fn single_partner(&self) -> bool {
        (0..self.p).all(|i| self.b.row(i).iter().filter(|x| **x != zero()).count() == 1)
    }

    /// `p = p'`, unit `a` and `c`, and `b` a permutation pattern.
    pub fn link_structure(&self) -> bool {
        let one = <Rat as Scalar>::one();
        let perm_rows = (0..self.p).all(|i| self.b.row(i).iter().filter(|x| **x != zero()).count() == 1);
        let bt = self.b.transpose();
        let perm_cols = (0..self.p_prime).all(|j| bt.row(j).iter().filter(|x| **x != zero()).count() == 1);
        self.p == self.p_prime
            && (0..self.p).all(|i| self.a.get(i, i) == &one)
            && (0..self.p_prime).all(|j| self.c.get(j, j) == &one)
            && perm_rows
            && perm_cols
    }

    pub fn to_json(&self) -> Json {
        json!({
            "inner": self.inner,
            "outer": self.outer,
            "p": self.p,
            "p_prime": self.p_prime,
            "L": matrix_json(&self.l),
            "L_prime": matrix_json(&self.l_prime),
            "a": matrix_json(&self.a),
            "b": matrix_json(&self.b),
            "c": matrix_json(&self.c),
            "Delta": matrix_json(&self.schur()),
        })
    }
}

/// Symmetric, zero row sums, nonpositive off-diagonal entries.
pub fn is_generalized_laplacian(m: &Matrix<Rat>) -> bool {
    m.is_symmetric()
        && (0..m.rows()).all(|i| {
            m.row(i).iter().fold(zero(), |s, x| s + x) == zero()
                && (0..m.cols()).all(|j| i == j || m.get(i, j) <= &zero())
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// (i)
    ZeroEigenvalue,
    /// (ii), `X' = 0`
    Articulation,
    /// (ii), `Delta = 0`
    Link,
    /// (ii) without either mechanism for the given `X`.
    Unresolved,
    /// (iii)
    SharedShift,
    /// (iv)
    NoSolution,
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::ZeroEigenvalue => "i",
            Case::Articulation => "ii-art",
            Case::Link => "ii-link",
            Case::Unresolved => "ii-unresolved",
            Case::SharedShift => "iii",
            Case::NoSolution => "iv",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classification of one eigenvector `X` of `G`.
#[derive(Clone, Debug)]
pub struct VectorCase {
    /// Indexed like `EmbeddingSplit::inner`.
    pub x: Vec<Rat>,
    pub case: Case,
    pub x_prime: Option<EigenVector>,
    pub lambda_prime: Option<Value>,
    /// `a^-1 b X'(1:p')` for an exact witness.
    pub boundary_from_witness: Option<Vec<QuadNum>>,
    /// An `X'` with `(X, X')` an eigenvector of `L''`, if one exists.
    pub extension: Option<Vec<Rat>>,
    /// Case (iv): a nonzero solution of `(Delta_bar + L') X' = lambda X'`, if any.
    pub eigy_solution: Option<Vec<Rat>>,
    /// Case (ii-link): whether `p = p'`, unit `a`, `c` and permutation `b` hold.
    pub link_structure: Option<bool>,
}

impl VectorCase {
    /// A case (iv) instance where the eigen-relation still has a nonzero solution.
    pub fn counterexample(&self) -> bool {
        self.case == Case::NoSolution && self.eigy_solution.is_some()
    }

    /// `X` extends to an eigenvector `(X, X')` of `L''` with `X' != 0`.
    pub fn extends_nonzero(&self) -> bool {
        self.extension.as_ref().is_some_and(|e| e.iter().any(|v| v != &zero()))
    }

    pub fn to_json(&self) -> Json {
        let v = |x: &[Rat]| x.iter().map(ToString::to_string).collect::<Vec<_>>();
        json!({
            "x": v(&self.x),
            "case": self.case.label(),
            "x_prime": self.x_prime.as_ref().map(EigenVector::to_json),
            "lambda_prime": self.lambda_prime.as_ref().map(ToString::to_string),
            "boundary_from_witness": self.boundary_from_witness.as_ref().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>()),
            "extension": self.extension.as_deref().map(v),
            "eigy_solution": self.eigy_solution.as_deref().map(v),
            "link_structure": self.link_structure,
            "counterexample": self.counterexample(),
            "extends_nonzero": self.extends_nonzero(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DichotomyEntry {
    /// Eigenvector of `L''`, in the order `inner ++ outer`.
    pub host_vector: Vec<Rat>,
    pub restriction_is_eigenvector: bool,
    pub interior_vanishes: bool,
}

impl DichotomyEntry {
    pub fn holds(&self) -> bool {
        self.restriction_is_eigenvector || self.interior_vanishes
    }
}

/// Restrictions of the host eigenvectors to `G`: either an eigenvector of `L` or zero
/// away from the boundary.
///
/// The rank argument for `p = 1` and a simple eigenvalue needs the `n - 1` interior rows
/// of `L - lambda I` to have rank `n - 1`; `interior_rank_full` records whether they do.
#[derive(Clone, Debug)]
pub struct DichotomyReport {
    pub p: usize,
    pub simple: bool,
    pub interior_rank_full: bool,
    pub entries: Vec<DichotomyEntry>,
}

impl DichotomyReport {
    /// `p = 1` and `lambda` simple for `L`: the scope of the rank argument as stated.
    pub fn stated_scope(&self) -> bool {
        self.p == 1 && self.simple
    }

    /// The stated scope with the interior rank condition the argument relies on.
    pub fn proof_applies(&self) -> bool {
        self.stated_scope() && self.interior_rank_full
    }

    pub fn violations(&self) -> usize {
        self.entries.iter().filter(|e| !e.holds()).count()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "p": self.p,
            "simple": self.simple,
            "stated_scope": self.stated_scope(),
            "interior_rank_full": self.interior_rank_full,
            "proof_applies": self.proof_applies(),
            "entries": self.entries.iter().map(|e| json!({
                "host_vector": e.host_vector.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "restriction_is_eigenvector": e.restriction_is_eigenvector,
                "interior_vanishes": e.interior_vanishes,
            })).collect::<Vec<_>>(),
            "violations": self.violations(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DeltaAnalysis {
    pub split: EmbeddingSplit,
    pub delta: Matrix<Rat>,
    pub delta_bar: Matrix<Rat>,
    pub lambda: BigInt,
    pub lambda_in_outer_spectrum: bool,
    pub cases: Vec<VectorCase>,
    pub dichotomy: DichotomyReport,
}

impl DeltaAnalysis {
    pub fn to_json(&self) -> Json {
        json!({
            "lambda": self.lambda.to_string(),
            "split": self.split.to_json(),
            "Delta_bar": matrix_json(&self.delta_bar),
            "lambda_in_outer_spectrum": self.lambda_in_outer_spectrum,
            "cases": self.cases.iter().map(VectorCase::to_json).collect::<Vec<_>>(),
            "dichotomy": self.dichotomy.to_json(),
        })
    }
}

/// Solves for `X'` with `(X, X')` an eigenvector of `L''`, given `L X = lambda X`.
fn extension_solve(s: &EmbeddingSplit, x: &[Rat], lam: &Rat) -> Option<Vec<Rat>> {
    let (n, n1, p, pp) = (s.n(), s.n_prime(), s.p, s.p_prime);
    let xb = &x[n - p..];
    let mut m = Matrix::zeros(p + n1, n1);
    let mut rhs = vec![zero(); p + n1];
    for k in 0..p {
        for j in 0..pp {
            m.set(k, j, s.b.get(k, j).clone());
        }
        rhs[k] = s.a.get(k, k) * &xb[k];
    }
    for i in 0..n1 {
        for j in 0..n1 {
            let mut v = s.l_prime.get(i, j).clone();
            if i == j {
                v -= lam;
                if i < pp {
                    v += s.c.get(i, i);
                }
            }
            m.set(p + i, j, v);
        }
        if i < pp {
            rhs[p + i] = (0..p).fold(zero(), |acc, k| acc + s.b.get(k, i) * &xb[k]);
        }
    }
    m.solve(&rhs)
}

/// Exact common eigenvector of `L'` (for `mu`) and `Delta_bar` (for `lambda - mu`).
fn shared_exact(lp: &Matrix<Rat>, db: &Matrix<Rat>, lam: &QuadNum, mu: &QuadNum) -> Option<Vec<QuadNum>> {
    let a = lp.map(rq).shifted(mu);
    let b = db.map(rq).shifted(&lam.minus(mu));
    a.stack(&b).nullspace().into_iter().next()
}

/// Numeric common eigenvector: smallest singular value of the stacked system.
fn shared_numeric(lp: &Matrix<Rat>, db: &Matrix<Rat>, lam: f64, mu: f64) -> Result<Option<Vec<f64>>> {
    let n = lp.rows();
    let mut stacked = Vec::with_capacity(2 * n);
    for (m, s) in [(lp, mu), (db, lam - mu)] {
        for i in 0..n {
            stacked.push((0..n).map(|j| rat_to_f64(m.get(i, j)) - if i == j { s } else { 0.0 }).collect::<Vec<f64>>());
        }
    }
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| stacked.iter().map(|r| r[i] * r[j]).sum()).collect())
        .collect();
    let pairs = symmetric_eigen(&gram)?;
    Ok(pairs.into_iter().next().filter(|p| p.value.abs() <= SHARED_TOL).map(|p| p.vector))
}

fn classify_vector(s: &EmbeddingSplit, delta: &Matrix<Rat>, db: &Matrix<Rat>, lam: &BigInt, in_spec: bool, x: Vec<Rat>) -> Result<VectorCase> {
    let lam_r = Rat::from_integer(lam.clone());
    let n = s.n();
    let mut vc = VectorCase {
        x,
        case: Case::NoSolution,
        x_prime: None,
        lambda_prime: None,
        boundary_from_witness: None,
        extension: None,
        eigy_solution: None,
        link_structure: None,
    };
    vc.extension = extension_solve(s, &vc.x, &lam_r);
    if lam == &BigInt::from(0) {
        vc.case = Case::ZeroEigenvalue;
        return Ok(vc);
    }
    if in_spec {
        let boundary_zero = vc.x[n - s.p..].iter().all(|v| v == &zero());
        vc.case = if boundary_zero {
            Case::Articulation
        } else if delta.is_zero() && vc.extension.is_some() {
            vc.link_structure = Some(s.link_structure());
            vc.x_prime = vc.extension.as_ref().map(|e| EigenVector::Exact(e.iter().map(rq).collect()));
            Case::Link
        } else {
            Case::Unresolved
        };
        return Ok(vc);
    }
    let lam_q = rq(&lam_r);
    let outer = s.outer_graph();
    if outer.is_unit_weight() {
        for ev in analyze_spectrum(&outer)?.eigenvalues {
            let mu = ev.value.approx();
            if mu >= lam_r_f64(lam) - 1e-12 {
                continue;
            }
            let found = match ev.value.as_quad() {
                Some(mq) => shared_exact(&s.l_prime, db, &lam_q, &mq).map(EigenVector::Exact),
                None => shared_numeric(&s.l_prime, db, lam_r_f64(lam), mu)?.map(EigenVector::Numeric),
            };
            if let Some(w) = found {
                if let EigenVector::Exact(xq) = &w {
                    let ainv = s.a.inverse().expect("positive diagonal").map(rq);
                    let xb: Vec<QuadNum> = xq[..s.p_prime].to_vec();
                    vc.boundary_from_witness = Some(ainv.mul_vec(&s.b.map(rq).mul_vec(&xb)));
                }
                vc.case = Case::SharedShift;
                vc.x_prime = Some(w);
                vc.lambda_prime = Some(ev.value);
                return Ok(vc);
            }
        }
    }
    let eigy = db.add(&s.l_prime).shifted(&lam_r);
    vc.eigy_solution = eigy.nullspace().into_iter().next();
    vc.case = Case::NoSolution;
    Ok(vc)
}

fn lam_r_f64(l: &BigInt) -> f64 {
    rat_to_f64(&Rat::from_integer(l.clone()))
}

/// Classifies every vector of the `lambda` eigenspace basis of `G`.
pub fn classify_case(host: &Graph, sub: &[usize], lambda: &BigInt) -> Result<DeltaAnalysis> {
    if !host.is_unit_weight() {
        return Err(Error::Weighted("subgraph case analysis"));
    }
    if lambda < &BigInt::from(0) {
        return Err(Error::Precondition("lambda must be nonnegative".into()));
    }
    let s = split_embedding(host, sub)?;
    let lam_r = Rat::from_integer(lambda.clone());
    let basis = s.l.shifted(&lam_r).nullspace();
    if basis.is_empty() {
        return Err(Error::NotAnEigenvalue(lambda.to_string()));
    }
    let delta = s.schur();
    let db = s.delta_bar();
    let in_spec = !s.l_prime.shifted(&lam_r).nullspace().is_empty();
    let cases = basis
        .into_iter()
        .map(|x| classify_vector(&s, &delta, &db, lambda, in_spec, x))
        .collect::<Result<Vec<_>>>()?;
    let dichotomy = dichotomy_of(&s, &lam_r);
    Ok(DeltaAnalysis { delta, delta_bar: db, lambda: lambda.clone(), lambda_in_outer_spectrum: in_spec, cases, dichotomy, split: s })
}

fn dichotomy_of(s: &EmbeddingSplit, lam: &Rat) -> DichotomyReport {
    let n = s.n();
    let simple = s.l.shifted(lam).nullspace().len() == 1;
    let entries = s
        .host_laplacian_ordered()
        .shifted(lam)
        .nullspace()
        .into_iter()
        .map(|v| {
            let r = &v[..n];
            let lr = s.l.mul_vec(r);
            let nonzero = r.iter().any(|x| x != &zero());
            DichotomyEntry {
                restriction_is_eigenvector: nonzero && lr.iter().zip(r).all(|(a, b)| a == &(b * lam)),
                interior_vanishes: r[..n - s.p].iter().all(|x| x == &zero()),
                host_vector: v,
            }
        })
        .collect();
    let shifted = s.l.shifted(lam);
    let interior = Matrix::from_rows(shifted.to_rows()[..n - s.p].to_vec());
    let interior_rank_full = n - s.p == 0 || interior.rank() == n - 1;
    DichotomyReport { p: s.p, simple, interior_rank_full, entries }
}

pub fn dichotomy_check(host: &Graph, sub: &[usize], lambda: &BigInt) -> Result<DichotomyReport> {
    let s = split_embedding(host, sub)?;
    let lam = Rat::from_integer(lambda.clone());
    if s.l.shifted(&lam).nullspace().is_empty() {
        return Err(Error::NotAnEigenvalue(lambda.to_string()));
    }
    Ok(dichotomy_of(&s, &lam))
}

/// Host vertex sets whose induced subgraph is connected and whose complement is nonempty.
pub fn connected_subsets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    (1u32..(1 << n) - 1)
        .map(|mask| (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|s| g.induced(s).is_connected())
        .collect()
}

/// Outcome of [`scan_embeddings`].
#[derive(Clone, Debug, Default)]
pub struct EmbeddingScan {
    pub splits: usize,
    pub reconstruction_failures: Vec<String>,
    pub abc_failures: Vec<String>,
    pub delta_failures: Vec<String>,
    /// `Delta = 0` without every boundary vertex of `G` having a single partner.
    pub zero_delta_failures: Vec<String>,
    pub link_cases: usize,
    pub link_structure_failures: Vec<String>,
    pub case_counts: BTreeMap<Case, usize>,
    /// Case (iv) with a nonzero solution of the reduced eigen-relation.
    pub counterexamples: Vec<String>,
    /// Case (iv) where `X` also extends to a host eigenvector with `X' != 0`.
    pub extending_counterexamples: Vec<String>,
    /// Instances where the rank argument applies.
    pub dichotomy_proven_checked: usize,
    pub dichotomy_proven_violations: Vec<String>,
    /// `p = 1`, simple eigenvalue, interior rows rank deficient.
    pub dichotomy_rank_gap_violations: Vec<String>,
    /// `p > 1` or a multiple eigenvalue of `L`.
    pub dichotomy_other_violations: Vec<String>,
}

impl EmbeddingScan {
    fn merge(mut self, o: EmbeddingScan) -> Self {
        self.splits += o.splits;
        self.reconstruction_failures.extend(o.reconstruction_failures);
        self.abc_failures.extend(o.abc_failures);
        self.delta_failures.extend(o.delta_failures);
        self.zero_delta_failures.extend(o.zero_delta_failures);
        self.link_cases += o.link_cases;
        self.link_structure_failures.extend(o.link_structure_failures);
        for (k, v) in o.case_counts {
            *self.case_counts.entry(k).or_default() += v;
        }
        self.counterexamples.extend(o.counterexamples);
        self.extending_counterexamples.extend(o.extending_counterexamples);
        self.dichotomy_proven_checked += o.dichotomy_proven_checked;
        self.dichotomy_proven_violations.extend(o.dichotomy_proven_violations);
        self.dichotomy_rank_gap_violations.extend(o.dichotomy_rank_gap_violations);
        self.dichotomy_other_violations.extend(o.dichotomy_other_violations);
        self
    }

    pub fn to_json(&self) -> Json {
        json!({
            "splits": self.splits,
            "reconstruction_failures": self.reconstruction_failures,
            "abc_failures": self.abc_failures,
            "delta_failures": self.delta_failures,
            "zero_delta_failures": self.zero_delta_failures,
            "link_cases": self.link_cases,
            "link_structure_failures": self.link_structure_failures,
            "case_counts": self.case_counts.iter().map(|(k, v)| (k.label().to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "counterexamples": self.counterexamples,
            "extending_counterexamples": self.extending_counterexamples,
            "dichotomy_proven_checked": self.dichotomy_proven_checked,
            "dichotomy_proven_violations": self.dichotomy_proven_violations,
            "dichotomy_rank_gap_violations": self.dichotomy_rank_gap_violations,
            "dichotomy_other_violations": self.dichotomy_other_violations,
        })
    }
}

fn scan_host(g: &Graph) -> Result<EmbeddingScan> {
    let mut out = EmbeddingScan::default();
    let cf = canonical_form(g)?;
    let tag = |sub: &[usize], extra: &str| format!("{cf} sub {sub:?}{extra}");
    for sub in connected_subsets(g) {
        let s = split_embedding(g, &sub)?;
        out.splits += 1;
        if s.reconstruct() != s.host_laplacian_ordered() {
            out.reconstruction_failures.push(tag(&sub, ""));
        }
        if !s.abc_holds() {
            out.abc_failures.push(tag(&sub, ""));
        }
        let delta = s.schur();
        if !s.delta_is_laplacian() || !is_generalized_laplacian(&delta) {
            out.delta_failures.push(tag(&sub, ""));
        }
        if delta.is_zero() && !s.single_partner() {
            out.zero_delta_failures.push(tag(&sub, ""));
        }
        let inner = s.inner_graph();
        let roots = analyze_spectrum(&inner)?.integer_roots;
        let mut lams: Vec<BigInt> = roots;
        lams.dedup();
        for lam in lams {
            let d = classify_case(g, &sub, &lam)?;
            for c in &d.cases {
                *out.case_counts.entry(c.case).or_default() += 1;
                if c.case == Case::Link {
                    out.link_cases += 1;
                    if c.link_structure != Some(true) {
                        out.link_structure_failures.push(tag(&sub, &format!(" lambda {lam}")));
                    }
                }
                if c.counterexample() {
                    out.counterexamples.push(tag(&sub, &format!(" lambda {lam}")));
                    if c.extends_nonzero() {
                        out.extending_counterexamples.push(tag(&sub, &format!(" lambda {lam}")));
                    }
                }
            }
            let rep = &d.dichotomy;
            if rep.proof_applies() {
                out.dichotomy_proven_checked += 1;
                if rep.violations() > 0 {
                    out.dichotomy_proven_violations.push(tag(&sub, &format!(" lambda {lam}")));
                }
            } else if rep.stated_scope() && rep.violations() > 0 {
                out.dichotomy_rank_gap_violations.push(tag(&sub, &format!(" lambda {lam}")));
            } else if rep.violations() > 0 {
                out.dichotomy_other_violations.push(tag(&sub, &format!(" lambda {lam} p {}", rep.p)));
            }
        }
    }
    Ok(out)
}

/// Every connected embedding in every connected host with `2 <= n'' <= n_max`.
pub fn scan_embeddings(n_max: usize) -> Result<EmbeddingScan> {
    let mut hosts = Vec::new();
    for n in 2..=n_max {
        hosts.extend(connected_classes(n)?.iter().map(CanonicalForm::to_graph));
    }
    let parts: Vec<EmbeddingScan> = hosts.par_iter().map(scan_host).collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(EmbeddingScan::default(), EmbeddingScan::merge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, clique};
    use crate::quad::rat;

    fn ggp_left() -> Graph {
        Graph::unit(7, &[(1, 3), (2, 3), (4, 5), (5, 6), (5, 7), (3, 4), (3, 5), (3, 6)]).unwrap()
    }

    fn ggp_right() -> Graph {
        Graph::unit(6, &[(1, 2), (2, 3), (4, 5), (5, 6), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    fn sub4() -> Graph {
        Graph::unit(8, &[(1, 2), (2, 3), (3, 4), (1, 4), (5, 7), (6, 7), (7, 8), (2, 5), (2, 6)]).unwrap()
    }

    fn m(rows: &[&[Rat]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn left_configuration() {
        let s = split_embedding(&ggp_left(), &[1, 2, 3]).unwrap();
        assert_eq!((s.p, s.p_prime), (1, 3));
        assert_eq!(s.a, m(&[&[rat(3, 1)]]));
        assert_eq!(s.b, m(&[&[rat(1, 1), rat(1, 1), rat(1, 1)]]));
        assert_eq!(s.c, Matrix::identity(3));
        let (t, o) = (rat(2, 3), rat(-1, 3));
        assert_eq!(s.schur(), m(&[&[t.clone(), o.clone(), o.clone()], &[o.clone(), t.clone(), o.clone()], &[o.clone(), o.clone(), t]]));
        assert_eq!(s.reconstruct(), s.host_laplacian_ordered());
        let d = classify_case(&ggp_left(), &[1, 2, 3], &BigInt::from(1)).unwrap();
        assert_eq!(d.cases.len(), 1);
        assert_eq!(d.cases[0].case, Case::Articulation);
    }

    #[test]
    fn right_configuration() {
        let s = split_embedding(&ggp_right(), &[1, 2, 3]).unwrap();
        assert_eq!(s.a, Matrix::identity(3));
        assert_eq!(s.b, Matrix::identity(3));
        assert_eq!(s.c, Matrix::identity(3));
        assert!(s.schur().is_zero());
        let d = classify_case(&ggp_right(), &[1, 2, 3], &BigInt::from(1)).unwrap();
        assert_eq!(d.cases[0].case, Case::Link);
        assert_eq!(d.cases[0].link_structure, Some(true));
        assert_eq!(d.dichotomy.violations(), 0);
    }

    #[test]
    fn shared_eigenvector_configuration() {
        let d = classify_case(&sub4(), &[1, 2, 3, 4], &BigInt::from(2)).unwrap();
        let h = rat(1, 2);
        assert_eq!(d.delta, m(&[&[h.clone(), -h.clone()], &[-h.clone(), h]]));
        assert_eq!(d.delta_bar.rows(), 4);
        let shared: Vec<_> = d.cases.iter().filter(|c| c.case == Case::SharedShift).collect();
        assert!(!shared.is_empty());
        let c = shared[0];
        assert_eq!(c.lambda_prime, Some(Value::integer(1)));
        let want: Vec<QuadNum> = [1, -1, 0, 0].iter().map(|&v| QuadNum::from_int(v)).collect();
        match c.x_prime.as_ref().unwrap() {
            EigenVector::Exact(v) => assert_eq!(crate::quad::normalize_quad_vector(v), want),
            other => panic!("numeric witness {other:?}"),
        }
    }

    #[test]
    fn single_cross_edge() {
        let g = Graph::new(2, &[(1, 2)], Some(&[rat(3, 2)])).unwrap();
        let s = split_embedding(&g, &[1]).unwrap();
        assert_eq!(s.a, m(&[&[rat(3, 2)]]));
        assert_eq!(s.c, m(&[&[rat(3, 2)]]));
        assert!(s.schur().is_zero());
    }

    #[test]
    fn scan_small_hosts() {
        let r = scan_embeddings(4).unwrap();
        assert!(r.splits > 0);
        assert!(r.reconstruction_failures.is_empty() && r.abc_failures.is_empty() && r.delta_failures.is_empty());
        assert!(r.zero_delta_failures.is_empty());
        assert!(r.dichotomy_proven_violations.is_empty());
        assert!(r.dichotomy_proven_checked > 0);
    }

    #[test]
    fn dichotomy_fails_on_star_with_path_inside() {
        // Star with centre 1; the path 2-1-3 misses leaf 4.
        let s4 = crate::graph::star(4);
        let rep = dichotomy_check(&s4, &[1, 2, 3], &BigInt::from(1)).unwrap();
        assert!(rep.stated_scope());
        assert!(!rep.interior_rank_full);
        assert!(rep.violations() > 0);
    }

    #[test]
    fn split_errors() {
        assert!(split_embedding(&chain(3), &[]).is_err());
        assert!(split_embedding(&chain(3), &[1, 2, 3]).is_err());
        assert!(split_embedding(&chain(3), &[1, 3]).is_err());
        assert!(split_embedding(&chain(3), &[4]).is_err());
        assert!(classify_case(&clique(3), &[1, 2], &BigInt::from(1)).is_err());
    }
}
