//! Closed-form spectra of cliques, stars, complete multipartite graphs, cycles and
//! chains. Every returned pair is re-checked against the Laplacian of the built graph.

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::jacobi::residual;
use crate::quad::{rat, QuadNum, Scalar};
use crate::spectrum::{
    analyze_spectrum, is_exact_eigenvector, EigenPair, EigenVector, Eigenvalue, Residual, Value,
};
use num_integer::Integer;
use std::f64::consts::PI;

fn ints(v: &[i64]) -> Vec<QuadNum> {
    v.iter().map(|&x| QuadNum::from_int(x)).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = unit(n, i);
    v[j] = -1;
    v
}

/// Attaches residuals and merges equal eigenvalues into multiplicities.
fn finish(g: &Graph, raw: Vec<(Value, EigenVector)>) -> Vec<EigenPair> {
    let lf = g.laplacian().to_f64();
    let mut out: Vec<EigenPair> = raw
        .into_iter()
        .map(|(value, vector)| {
            let residual = match (&vector, value.as_quad()) {
                (EigenVector::Exact(x), Some(l)) if is_exact_eigenvector(g, &l, x) => Residual::Exact,
                _ => Residual::Numeric(residual(&lf, value.approx(), &vector.to_f64())),
            };
            EigenPair { eigenvalue: Eigenvalue { value, multiplicity: 0 }, vector, residual }
        })
        .collect();
    let values: Vec<Value> = out.iter().map(|p| p.eigenvalue.value.clone()).collect();
    for p in &mut out {
        p.eigenvalue.multiplicity = values.iter().filter(|v| same_value(v, &p.eigenvalue.value)).count();
    }
    out.sort_by(|a, b| a.eigenvalue.approx().total_cmp(&b.eigenvalue.approx()));
    out
}

fn same_value(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Numeric { approx: x, .. }, Value::Numeric { approx: y, .. }) => (x - y).abs() < 1e-9,
        _ => a == b,
    }
}

pub fn clique_spectrum(n: usize) -> Result<Vec<EigenPair>> {
    if n == 0 {
        return Err(Error::Precondition("clique needs at least one vertex".into()));
    }
    let mut raw = vec![(Value::integer(0), EigenVector::Exact(ints(&vec![1; n])))];
    for k in 1..n {
        raw.push((Value::integer(n as i64), EigenVector::Exact(ints(&diff(n, 0, k)))));
    }
    Ok(finish(&graph::clique(n), raw))
}

/// Star with centre 1.
pub fn star_spectrum(n: usize) -> Result<Vec<EigenPair>> {
    if n < 2 {
        return Err(Error::Precondition("star needs at least two vertices".into()));
    }
    let mut raw = vec![(Value::integer(0), EigenVector::Exact(ints(&vec![1; n])))];
    for k in 2..n {
        raw.push((Value::integer(1), EigenVector::Exact(ints(&diff(n, 1, k)))));
    }
    let mut top = vec![-1; n];
    top[0] = n as i64 - 1;
    raw.push((Value::integer(n as i64), EigenVector::Exact(ints(&top))));
    Ok(finish(&graph::star(n), raw))
}

pub fn bipartite_spectrum(n1: usize, n2: usize) -> Result<Vec<EigenPair>> {
    multipartite_spectrum(&[n1, n2])
}

/// Complete multipartite graph with consecutive vertex blocks as parts.
pub fn multipartite_spectrum(parts: &[usize]) -> Result<Vec<EigenPair>> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Precondition("parts must be nonempty".into()));
    }
    let n: usize = parts.iter().sum();
    let starts: Vec<usize> = parts.iter().scan(0, |s, &p| {
        let v = *s;
        *s += p;
        Some(v)
    }).collect();
    let mut raw = vec![(Value::integer(0), EigenVector::Exact(ints(&vec![1; n])))];
    for (p, &size) in parts.iter().enumerate() {
        for k in 1..size {
            let v = diff(n, starts[p], starts[p] + k);
            raw.push((Value::integer((n - size) as i64), EigenVector::Exact(ints(&v))));
        }
    }
    for p in 1..parts.len() {
        let mut v = vec![0i64; n];
        for k in 0..parts[0] {
            v[k] = parts[p] as i64;
        }
        for k in 0..parts[p] {
            v[starts[p] + k] = -(parts[0] as i64);
        }
        raw.push((Value::integer(n as i64), EigenVector::Exact(ints(&v))));
    }
    Ok(finish(&graph::multipartite(parts), raw))
}

/// `2 cos(2 pi j / N)` when it lies in a quadratic field.
pub fn two_cos_exact(j: usize, big_n: usize) -> Option<QuadNum> {
    let g = j.gcd(&big_n);
    let (j, m) = (j / g % (big_n / g), big_n / g);
    let half = |a: i64, b: i64, d: i64| QuadNum::new(rat(a, 2), rat(b, 2), d);
    let v = match (m, j) {
        (1, _) => QuadNum::from_int(2),
        (2, _) => QuadNum::from_int(-2),
        (3, _) => QuadNum::from_int(-1),
        (4, _) => QuadNum::from_int(0),
        (6, _) => QuadNum::from_int(1),
        (5, 1 | 4) => half(-1, 1, 5),
        (5, _) => half(-1, -1, 5),
        (8, 1 | 7) => QuadNum::new(rat(0, 1), rat(1, 1), 2),
        (8, _) => QuadNum::new(rat(0, 1), rat(-1, 1), 2),
        (10, 1 | 9) => half(1, 1, 5),
        (10, _) => half(1, -1, 5),
        (12, 1 | 11) => QuadNum::new(rat(0, 1), rat(1, 1), 3),
        (12, _) => QuadNum::new(rat(0, 1), rat(-1, 1), 3),
        _ => return None,
    };
    Some(v)
}

/// `2 - 2 cos(2 pi j / N)`, exact when possible; otherwise numeric with the irreducible
/// factor of `g`'s characteristic polynomial it satisfies.
fn trig_value(j: usize, big_n: usize, g: &Graph) -> Result<Value> {
    if let Some(c) = two_cos_exact(j, big_n) {
        let v = QuadNum::from_int(2).minus(&c);
        return Value::from_quad(&v).ok_or_else(|| Error::Precondition("non-integer rational".into()));
    }
    let approx = 2.0 - 2.0 * (2.0 * PI * j as f64 / big_n as f64).cos();
    let a = analyze_spectrum(g)?;
    let factor = a
        .factors
        .iter()
        .map(|(f, _)| f)
        .min_by(|f, h| f.eval_f64(approx).abs().total_cmp(&h.eval_f64(approx).abs()))
        .cloned()
        .ok_or_else(|| Error::NotAnEigenvalue(approx.to_string()))?;
    Ok(Value::Numeric { approx, factor })
}

fn unit_norm(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

/// Real cycle eigenvectors `x^k = cos((j-1) a_k)` and `w^k = sin((j-1) a_k)`,
/// `a_k = 2 (k-1) pi / n`.
pub fn cycle_spectrum(n: usize) -> Result<Vec<EigenPair>> {
    if n < 3 {
        return Err(Error::Precondition("cycle needs at least three vertices".into()));
    }
    let g = graph::cycle(n);
    let mut raw = vec![(Value::integer(0), EigenVector::Exact(ints(&vec![1; n])))];
    for k in 2..=n / 2 + 1 {
        let a = 2.0 * (k - 1) as f64 * PI / n as f64;
        let value = trig_value(k - 1, n, &g)?;
        if 2 * (k - 1) == n {
            let alt: Vec<i64> = (0..n).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
            raw.push((value, EigenVector::Exact(ints(&alt))));
            continue;
        }
        let x: Vec<f64> = (0..n).map(|j| (j as f64 * a).cos()).collect();
        let w: Vec<f64> = (0..n).map(|j| (j as f64 * a).sin()).collect();
        raw.push((value.clone(), EigenVector::Numeric(unit_norm(x))));
        raw.push((value, EigenVector::Numeric(unit_norm(w))));
    }
    Ok(finish(&g, raw))
}

/// Chain eigenvectors `v_j^k = cos(pi (k-1) (j - 1/2) / n)`.
pub fn chain_spectrum(n: usize) -> Result<Vec<EigenPair>> {
    if n == 0 {
        return Err(Error::Precondition("chain needs at least one vertex".into()));
    }
    let g = graph::chain(n);
    let mut raw = vec![(Value::integer(0), EigenVector::Exact(ints(&vec![1; n])))];
    for k in 2..=n {
        let value = trig_value(k - 1, 2 * n, &g)?;
        let v: Vec<f64> = (1..=n)
            .map(|j| (PI * (k - 1) as f64 * (j as f64 - 0.5) / n as f64).cos())
            .collect();
        raw.push((value, EigenVector::Numeric(unit_norm(v))));
    }
    Ok(finish(&g, raw))
}

/// Vertices `j` of the `n`-chain with `(k-1)(2j-1) = n(1+2m)` for some integer `m >= 0`,
/// i.e. the zeros of the `k`-th chain eigenvector.
pub fn chain_soft_condition(n: usize, k: usize) -> Vec<usize> {
    (1..=n)
        .filter(|&j| {
            let lhs = (k.saturating_sub(1)) * (2 * j - 1);
            lhs > 0 && lhs % n == 0 && (lhs / n) % 2 == 1
        })
        .collect()
}

/// Entries of `v` with magnitude below `tol`.
pub fn zero_count(v: &[f64], tol: f64) -> usize {
    v.iter().filter(|x| x.abs() < tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::numeric_spectrum;

    fn values(p: &[EigenPair]) -> Vec<String> {
        p.iter().map(|e| e.eigenvalue.value.to_string()).collect()
    }

    #[test]
    fn cycle_four() {
        let p = cycle_spectrum(4).unwrap();
        assert_eq!(values(&p), vec!["0", "2", "2", "4"]);
        assert_eq!(p[3].vector, EigenVector::Exact(ints(&[1, -1, 1, -1])));
        assert!(p.iter().all(|e| match e.residual {
            Residual::Exact => true,
            Residual::Numeric(r) => r < 1e-12,
        }));
    }

    #[test]
    fn star_top_vector_uses_n_minus_one() {
        let p = star_spectrum(5).unwrap();
        let top = p.last().unwrap();
        assert_eq!(top.vector, EigenVector::Exact(ints(&[4, -1, -1, -1, -1])));
        assert_eq!(top.residual, Residual::Exact);
    }

    #[test]
    fn multipartite_222() {
        let p = multipartite_spectrum(&[2, 2, 2]).unwrap();
        assert_eq!(values(&p), vec!["0", "4", "4", "4", "6", "6"]);
        assert!(p.iter().all(|e| e.residual == Residual::Exact));
    }

    #[test]
    fn chain_two() {
        assert_eq!(values(&chain_spectrum(2).unwrap()), vec!["0", "2"]);
    }

    #[test]
    fn chain_soft_vertices() {
        for k in 1..=8 {
            assert!(chain_soft_condition(8, k).is_empty());
        }
        assert!(chain_soft_condition(5, 3).is_empty());
        assert_eq!(chain_soft_condition(5, 2), vec![3]);
        assert_eq!(chain_soft_condition(7, 2), vec![4]);
        assert_eq!(chain_soft_condition(9, 2), vec![5]);
        assert_eq!(chain_soft_condition(9, 4), vec![2, 5, 8]);
    }

    #[test]
    fn chain_condition_matches_vector_zeros() {
        for n in 1..=12 {
            for k in 1..=n {
                let zeros: Vec<usize> = (1..=n)
                    .filter(|&j| (PI * (k - 1) as f64 * (j as f64 - 0.5) / n as f64).cos().abs() < 1e-12)
                    .collect();
                assert_eq!(chain_soft_condition(n, k), zeros, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn numeric_values_carry_factors() {
        let p = cycle_spectrum(7).unwrap();
        let num = p.iter().find(|e| matches!(e.eigenvalue.value, Value::Numeric { .. })).unwrap();
        if let Value::Numeric { approx, factor } = &num.eigenvalue.value {
            assert_eq!(factor.degree(), 3);
            assert!(factor.eval_f64(*approx).abs() < 1e-9);
        }
        let oracle = numeric_spectrum(&graph::cycle(7).laplacian()).unwrap();
        for (a, b) in p.iter().zip(&oracle) {
            assert!((a.eigenvalue.approx() - b.value).abs() < 1e-9);
        }
    }
}
