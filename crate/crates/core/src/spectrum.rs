//! Exact Laplacian spectra: eigenvalue classification, eigenspaces and soft nodes.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::jacobi::{numeric_spectrum, residual, NumericPair};
use crate::matrix::Matrix;
use crate::poly::{
    char_poly, factor_real_rooted, integer_roots, quadratic_roots, real_roots, square_free,
    IntPolynomial,
};
use crate::quad::{normalize_quad_vector, QuadNum, Rat, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value as Json};
use std::fmt;

/// Default zero tolerance for eigenvectors known only numerically.
pub const SOFT_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Integer(BigInt),
    /// `(p + q sqrt d) / r`
    Quadratic { p: BigInt, q: BigInt, d: i64, r: BigInt },
    /// A root of an irreducible factor of degree at least 3.
    Numeric { approx: f64, factor: IntPolynomial },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: Value,
    pub multiplicity: usize,
}

impl Value {
    pub fn integer(n: i64) -> Self {
        Value::Integer(BigInt::from(n))
    }

    pub fn approx(&self) -> f64 {
        match self {
            Value::Integer(n) => n.to_f64().unwrap_or(f64::NAN),
            Value::Quadratic { .. } => self.as_quad().expect("quadratic").to_f64(),
            Value::Numeric { approx, .. } => *approx,
        }
    }

    /// Exact value in `Q(sqrt d)`, absent for numeric kinds.
    pub fn as_quad(&self) -> Option<QuadNum> {
        match self {
            Value::Integer(n) => Some(QuadNum::from_rat(Rat::from_integer(n.clone()))),
            Value::Quadratic { p, q, d, r } => Some(QuadNum::from_parts(p, q, *d, r)),
            Value::Numeric { .. } => None,
        }
    }

    /// Builds the tagged value of an element of `Q(sqrt d)`; `None` for non-integer rationals.
    pub fn from_quad(x: &QuadNum) -> Option<Self> {
        if x.is_rational() {
            return x.a.is_integer().then(|| Value::Integer(x.a.to_integer()));
        }
        let r = x.a.denom().lcm(x.b.denom());
        let p = x.a.numer() * (&r / x.a.denom());
        let q = x.b.numer() * (&r / x.b.denom());
        Some(Value::Quadratic { p, q, d: x.d, r })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Integer(_) => "integer",
            Value::Quadratic { .. } => "quadratic",
            Value::Numeric { .. } => "numeric",
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Value::Integer(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Integer(n) if n.is_zero())
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Integer(n) => json!({"kind": "integer", "value": n.to_string()}),
            Value::Quadratic { p, q, d, r } => json!({
                "kind": "quadratic",
                "p": p.to_string(), "q": q.to_string(), "d": d, "r": r.to_string(),
                "approx": self.approx(),
            }),
            Value::Numeric { approx, factor } => json!({
                "kind": "numeric", "approx": approx, "factor": factor.to_strings(),
            }),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Integer(n) => write!(f, "{n}"),
            Value::Quadratic { p, q, d, r } => {
                let sign = if q.is_negative() { '-' } else { '+' };
                let qa = q.abs();
                let rad = if qa.is_one() { format!("sqrt({d})") } else { format!("{qa}*sqrt({d})") };
                if r.is_one() {
                    write!(f, "{p} {sign} {rad}")
                } else {
                    write!(f, "({p} {sign} {rad})/{r}")
                }
            }
            Value::Numeric { approx, factor } => write!(f, "{approx:.10} (root of {factor})"),
        }
    }
}

impl Eigenvalue {
    pub fn approx(&self) -> f64 {
        self.value.approx()
    }
}

/// Characteristic polynomial with its integer roots and the factorization of the rest.
#[derive(Clone, Debug)]
pub struct SpectrumAnalysis {
    pub char_poly: IntPolynomial,
    pub integer_roots: Vec<BigInt>,
    pub quotient: IntPolynomial,
    /// Irreducible factors of the quotient with multiplicity.
    pub factors: Vec<(IntPolynomial, usize)>,
    /// Ascending by value.
    pub eigenvalues: Vec<Eigenvalue>,
}

/// Exact spectrum of a unit-weight graph, connected or not.
pub fn analyze_spectrum(g: &Graph) -> Result<SpectrumAnalysis> {
    if !g.is_unit_weight() {
        return Err(Error::Weighted("exact spectrum"));
    }
    let cp = char_poly(&g.laplacian())?;
    let (roots, quotient) = integer_roots(&cp)?;
    let mut eig: Vec<Eigenvalue> = Vec::new();
    for r in &roots {
        match eig.last_mut() {
            Some(e) if e.value.as_integer() == Some(r) => e.multiplicity += 1,
            _ => eig.push(Eigenvalue { value: Value::Integer(r.clone()), multiplicity: 1 }),
        }
    }
    let mut factors = Vec::new();
    for (sf, mult) in square_free(&quotient) {
        for f in factor_real_rooted(&sf)? {
            factors.push((f, mult));
        }
    }
    for (f, mult) in &factors {
        match f.degree() {
            1 => {
                // Only reachable if deflation missed a root; kept for completeness.
                let r = -&f.coeffs()[0];
                eig.push(Eigenvalue { value: Value::Integer(r), multiplicity: *mult });
            }
            2 => {
                let (p, q, d, r) = quadratic_roots(f).ok_or_else(|| {
                    Error::Precondition(format!("quadratic factor {f} has no irrational roots"))
                })?;
                for q in [-q.clone(), q] {
                    eig.push(Eigenvalue {
                        value: Value::Quadratic { p: p.clone(), q, d, r: r.clone() },
                        multiplicity: *mult,
                    });
                }
            }
            _ => {
                for approx in real_roots(f) {
                    eig.push(Eigenvalue {
                        value: Value::Numeric { approx, factor: f.clone() },
                        multiplicity: *mult,
                    });
                }
            }
        }
    }
    eig.sort_by(|a, b| a.approx().total_cmp(&b.approx()));
    Ok(SpectrumAnalysis { char_poly: cp, integer_roots: roots, quotient, factors, eigenvalues: eig })
}

/// Complete spectrum of a connected unit-weight graph.
pub fn classify_spectrum(g: &Graph) -> Result<Vec<Eigenvalue>> {
    let a = analyze_spectrum(g)?;
    let zero = a.eigenvalues.iter().find(|e| e.value.is_zero()).map_or(0, |e| e.multiplicity);
    if zero != 1 {
        return Err(Error::Disconnected { zero_multiplicity: zero });
    }
    Ok(a.eigenvalues)
}

fn coprime_integers(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -g } else { g };
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of the `lambda` eigenspace as coprime integer vectors.
pub fn rational_eigenspace(g: &Graph, lambda: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let l = g.laplacian();
    let basis = l.matrix().shifted(&Rat::from_integer(lambda.clone())).nullspace();
    if basis.is_empty() {
        return Err(Error::NotAnEigenvalue(lambda.to_string()));
    }
    Ok(basis.iter().map(|v| coprime_integers(v)).collect())
}

/// Basis of the eigenspace of an exactly known eigenvalue, over `Q(sqrt d)`.
pub fn exact_eigenspace(g: &Graph, lambda: &QuadNum) -> Result<Vec<Vec<QuadNum>>> {
    let l = g.laplacian().matrix().map(|x| QuadNum::from_rat(x.clone()));
    let basis = l.shifted(lambda).nullspace();
    if basis.is_empty() {
        return Err(Error::NotAnEigenvalue(lambda.to_string()));
    }
    Ok(basis.iter().map(|v| normalize_quad_vector(v)).collect())
}

pub fn is_exact_eigenvector(g: &Graph, lambda: &QuadNum, x: &[QuadNum]) -> bool {
    if x.len() != g.n() || x.iter().all(Scalar::is_zero) {
        return false;
    }
    let l: Matrix<QuadNum> = g.laplacian().matrix().map(|v| QuadNum::from_rat(v.clone()));
    l.mul_vec(x).iter().zip(x).all(|(lx, xi)| lx == &lambda.times(xi))
}

#[derive(Clone, Debug, PartialEq)]
pub enum EigenVector {
    Exact(Vec<QuadNum>),
    Numeric(Vec<f64>),
}

impl EigenVector {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            EigenVector::Exact(v) => v.iter().map(QuadNum::to_f64).collect(),
            EigenVector::Numeric(v) => v.clone(),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            EigenVector::Exact(v) => json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()),
            EigenVector::Numeric(v) => json!(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    /// Checked to be exactly zero.
    Exact,
    Numeric(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub eigenvalue: Eigenvalue,
    pub vector: EigenVector,
    pub residual: Residual,
}

impl EigenPair {
    pub fn to_json(&self) -> Json {
        json!({
            "eigenvalue": self.eigenvalue.value.to_json(),
            "multiplicity": self.eigenvalue.multiplicity,
            "vector": self.vector.to_json(),
            "residual": match self.residual {
                Residual::Exact => json!(0),
                Residual::Numeric(r) => json!(r),
            },
        })
    }
}

/// Numeric eigenvectors whose eigenvalue lies within `tol` of `approx`.
pub fn numeric_eigenspace(pairs: &[NumericPair], approx: f64, tol: f64) -> Vec<Vec<f64>> {
    pairs
        .iter()
        .filter(|p| (p.value - approx).abs() <= tol * approx.abs().max(1.0))
        .map(|p| p.vector.clone())
        .collect()
}

/// Every eigenpair of a connected unit-weight graph: exact vectors for integer and
/// quadratic eigenvalues, Jacobi vectors otherwise.
pub fn eigenpairs(g: &Graph) -> Result<Vec<EigenPair>> {
    let spec = classify_spectrum(g)?;
    let lf = g.laplacian().to_f64();
    let numeric = numeric_spectrum(&g.laplacian())?;
    let mut out = Vec::new();
    for e in spec {
        match e.value.as_quad() {
            Some(lambda) => {
                for v in exact_eigenspace(g, &lambda)? {
                    let residual = if is_exact_eigenvector(g, &lambda, &v) {
                        Residual::Exact
                    } else {
                        Residual::Numeric(residual(&lf, lambda.to_f64(), &to_f64(&v)))
                    };
                    out.push(EigenPair { eigenvalue: e.clone(), vector: EigenVector::Exact(v), residual });
                }
            }
            None => {
                for v in numeric_eigenspace(&numeric, e.approx(), 1e-6) {
                    let r = residual(&lf, e.approx(), &v);
                    out.push(EigenPair {
                        eigenvalue: e.clone(),
                        vector: EigenVector::Numeric(v),
                        residual: Residual::Numeric(r),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn to_f64(v: &[QuadNum]) -> Vec<f64> {
    v.iter().map(QuadNum::to_f64).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoftWitness {
    pub vertex: usize,
    pub vector: EigenVector,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoftNodeReport {
    pub eigenvalue: Value,
    pub dimension: usize,
    pub soft: Vec<usize>,
    pub witnesses: Vec<SoftWitness>,
}

impl SoftNodeReport {
    pub fn to_json(&self) -> Json {
        json!({
            "eigenvalue": self.eigenvalue.to_json(),
            "eigenspace_dimension": self.dimension,
            "soft_nodes": self.soft,
            "witnesses": self.witnesses.iter().map(|w| json!({
                "vertex": w.vertex,
                "vector": w.vector.to_json(),
                "residual": match w.residual { Residual::Exact => json!(0), Residual::Numeric(r) => json!(r) },
            })).collect::<Vec<_>>(),
        })
    }
}

/// A nonzero vector of the span of `basis` vanishing at index `s`, if one exists.
pub fn exact_soft_witness(basis: &[Vec<QuadNum>], s: usize) -> Option<Vec<QuadNum>> {
    if let Some(b) = basis.iter().find(|b| b[s].is_zero()) {
        return Some(b.clone());
    }
    if basis.len() < 2 {
        return None;
    }
    let (bi, bj) = (&basis[0], &basis[1]);
    let w: Vec<QuadNum> =
        bi.iter().zip(bj).map(|(x, y)| bj[s].times(x).minus(&bi[s].times(y))).collect();
    Some(normalize_quad_vector(&w))
}

pub fn soft_nodes(g: &Graph, lambda: &Value) -> Result<SoftNodeReport> {
    soft_nodes_with_tol(g, lambda, SOFT_TOL)
}

/// Soft vertices for `lambda`. `tol` applies only to numerically known eigenvalues.
pub fn soft_nodes_with_tol(g: &Graph, lambda: &Value, tol: f64) -> Result<SoftNodeReport> {
    let n = g.n();
    let mut soft = Vec::new();
    let mut witnesses = Vec::new();
    let dimension;
    match lambda.as_quad() {
        Some(l) => {
            let basis = exact_eigenspace(g, &l)?;
            dimension = basis.len();
            for s in 0..n {
                if let Some(w) = exact_soft_witness(&basis, s) {
                    debug_assert!(is_exact_eigenvector(g, &l, &w));
                    soft.push(s + 1);
                    witnesses.push(SoftWitness {
                        vertex: s + 1,
                        vector: EigenVector::Exact(w),
                        residual: Residual::Exact,
                    });
                }
            }
        }
        None => {
            let approx = lambda.approx();
            let lf = g.laplacian().to_f64();
            let pairs = numeric_spectrum(&g.laplacian())?;
            let basis = numeric_eigenspace(&pairs, approx, 1e-6);
            if basis.is_empty() {
                return Err(Error::NotAnEigenvalue(lambda.to_string()));
            }
            dimension = basis.len();
            for s in 0..n {
                let w = if basis.len() >= 2 {
                    let i = (0..basis.len())
                        .max_by(|&a, &b| basis[a][s].abs().total_cmp(&basis[b][s].abs()))
                        .expect("nonempty");
                    let j = if i == 0 { 1 } else { 0 };
                    let (bi, bj) = (&basis[i], &basis[j]);
                    bi.iter().zip(bj).map(|(x, y)| bj[s] * x - bi[s] * y).collect::<Vec<f64>>()
                } else {
                    basis[0].clone()
                };
                let mx = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if mx == 0.0 {
                    continue;
                }
                let w: Vec<f64> = w.iter().map(|x| x / mx).collect();
                if w[s].abs() < tol {
                    let r = residual(&lf, approx, &w);
                    soft.push(s + 1);
                    witnesses.push(SoftWitness {
                        vertex: s + 1,
                        vector: EigenVector::Numeric(w),
                        residual: Residual::Numeric(r),
                    });
                }
            }
        }
    }
    Ok(SoftNodeReport { eigenvalue: lambda.clone(), dimension, soft, witnesses })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MerrisViolation {
    pub vertex: usize,
    pub eigenvalue: Value,
    pub component: f64,
}

/// Checks that every eigenvector for `0 < lambda < n` vanishes at each vertex of degree `n - 1`.
pub fn merris_degree_zero_check(g: &Graph) -> Result<Vec<MerrisViolation>> {
    let n = g.n();
    let full: Vec<usize> = (1..=n).filter(|&v| g.degree(v) == n - 1).collect();
    let mut out = Vec::new();
    if full.is_empty() {
        return Ok(out);
    }
    let spec = analyze_spectrum(g)?.eigenvalues;
    let nq = QuadNum::from_int(n as i64);
    let zero = QuadNum::from_int(0);
    let mut numeric: Option<Vec<NumericPair>> = None;
    for e in spec {
        match e.value.as_quad() {
            Some(l) => {
                if l <= zero || l >= nq {
                    continue;
                }
                let basis = exact_eigenspace(g, &l)?;
                for &s in &full {
                    for b in &basis {
                        if !b[s - 1].is_zero() {
                            out.push(MerrisViolation {
                                vertex: s,
                                eigenvalue: e.value.clone(),
                                component: b[s - 1].to_f64(),
                            });
                        }
                    }
                }
            }
            None => {
                let a = e.approx();
                if a <= 0.0 || a >= n as f64 {
                    continue;
                }
                let pairs = match &numeric {
                    Some(p) => p,
                    None => numeric.insert(numeric_spectrum(&g.laplacian())?),
                };
                for v in numeric_eigenspace(pairs, a, 1e-6) {
                    for &s in &full {
                        if v[s - 1].abs() > 1e-9 {
                            out.push(MerrisViolation { vertex: s, eigenvalue: e.value.clone(), component: v[s - 1] });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, clique, cycle, multipartite, star};
    use crate::quad::int;

    fn values(g: &Graph) -> Vec<(String, usize)> {
        classify_spectrum(g).unwrap().iter().map(|e| (e.value.to_string(), e.multiplicity)).collect()
    }

    #[test]
    fn bipartite_two_three() {
        let v = values(&multipartite(&[2, 3]));
        assert_eq!(v, vec![("0".into(), 1), ("2".into(), 2), ("3".into(), 1), ("5".into(), 1)]);
    }

    #[test]
    fn chain_five_exact() {
        let v: Vec<String> = values(&chain(5)).into_iter().map(|x| x.0).collect();
        assert_eq!(
            v,
            vec!["0", "(3 - sqrt(5))/2", "(5 - sqrt(5))/2", "(3 + sqrt(5))/2", "(5 + sqrt(5))/2"]
        );
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::unit(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(classify_spectrum(&g), Err(Error::Disconnected { zero_multiplicity: 2 }));
    }

    #[test]
    fn eigenspaces() {
        let k3 = rational_eigenspace(&clique(3), &BigInt::from(3)).unwrap();
        assert_eq!(k3.len(), 2);
        let c3 = rational_eigenspace(&chain(3), &BigInt::from(1)).unwrap();
        assert_eq!(c3, vec![vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)]]);
        let s4 = rational_eigenspace(&star(4), &BigInt::from(1)).unwrap();
        assert_eq!(s4.len(), 2);
        assert!(s4.iter().all(|v| v[0].is_zero()));
        assert!(rational_eigenspace(&chain(3), &BigInt::from(2)).is_err());
    }

    #[test]
    fn soft_sets() {
        let r = soft_nodes(&cycle(4), &Value::integer(2)).unwrap();
        assert_eq!(r.soft, vec![1, 2, 3, 4]);
        let r = soft_nodes(&chain(3), &Value::integer(1)).unwrap();
        assert_eq!(r.soft, vec![2]);
        assert_eq!(
            r.witnesses[0].vector,
            EigenVector::Exact(vec![QuadNum::from_int(1), QuadNum::from_int(0), QuadNum::from_int(-1)])
        );
    }

    #[test]
    fn numeric_soft_nodes_use_tolerance() {
        // Chain 7 has cubic factors; its middle vertex vanishes on every even-index eigenvector.
        let spec = classify_spectrum(&chain(7)).unwrap();
        let cubic = spec.iter().find(|e| matches!(e.value, Value::Numeric { .. })).unwrap();
        let r = soft_nodes(&chain(7), &cubic.value).unwrap();
        assert!(r.witnesses.iter().all(|w| matches!(w.residual, Residual::Numeric(x) if x < 1e-9)));
    }

    #[test]
    fn merris_star_center() {
        assert!(merris_degree_zero_check(&star(5)).unwrap().is_empty());
        assert!(merris_degree_zero_check(&clique(4)).unwrap().is_empty());
        let sum: Rat = rational_eigenspace(&star(5), &BigInt::from(1)).unwrap()[0]
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .fold(int(0), |a, b| a + b);
        assert!(Zero::is_zero(&sum));
    }
}
