//! Cyclic Jacobi eigen-decomposition of real symmetric matrices. Used as an
//! independent floating-point oracle for the exact routines.

use crate::error::{Error, Result};
use crate::graph::LaplacianMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct NumericPair {
    pub value: f64,
    /// Unit Euclidean norm, first entry above 1e-9 in magnitude positive.
    pub vector: Vec<f64>,
    /// Max-norm of `A x - value x`.
    pub residual: f64,
}

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix, ascending by value, ties broken by the vectors.
pub fn symmetric_eigen(a: &[Vec<f64>]) -> Result<Vec<NumericPair>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::NonSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::NonSymmetric);
            }
        }
    }
    let mut m = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let norm = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-12 * norm.max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut pairs: Vec<NumericPair> = (0..n)
        .map(|k| {
            let mut x: Vec<f64> = (0..n).map(|i| v[i][k]).collect();
            let nrm = x.iter().map(|e| e * e).sum::<f64>().sqrt();
            let flip = x.iter().find(|e| e.abs() > 1e-9).is_some_and(|e| *e < 0.0);
            for e in &mut x {
                *e /= if flip { -nrm } else { nrm };
            }
            let value = m[k][k];
            let residual = residual(a, value, &x);
            NumericPair { value, vector: x, residual }
        })
        .collect();
    pairs.sort_by(|a, b| {
        a.value.total_cmp(&b.value).then_with(|| {
            a.vector
                .iter()
                .zip(&b.vector)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(pairs)
}

pub fn residual(a: &[Vec<f64>], value: f64, x: &[f64]) -> f64 {
    a.iter()
        .zip(x)
        .map(|(row, xi)| (row.iter().zip(x).map(|(r, e)| r * e).sum::<f64>() - value * xi).abs())
        .fold(0.0, f64::max)
}

pub fn numeric_spectrum(l: &LaplacianMatrix) -> Result<Vec<NumericPair>> {
    symmetric_eigen(&l.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, clique};

    #[test]
    fn k2() {
        let p = numeric_spectrum(&clique(2).laplacian()).unwrap();
        assert!(p[0].value.abs() < 1e-12 && (p[1].value - 2.0).abs() < 1e-12);
        assert!(p.iter().all(|e| e.residual < 1e-12));
    }

    #[test]
    fn chain_three() {
        let p = numeric_spectrum(&chain(3).laplacian()).unwrap();
        let vals: Vec<f64> = p.iter().map(|e| e.value).collect();
        for (v, w) in vals.iter().zip([0.0, 1.0, 3.0]) {
            assert!((v - w).abs() < 1e-12);
        }
        let s = 0.5f64.sqrt();
        assert!((p[1].vector[0] - s).abs() < 1e-12 && p[1].vector[1].abs() < 1e-12);
    }

    #[test]
    fn rejects_non_symmetric() {
        assert_eq!(symmetric_eigen(&[vec![1.0, 2.0], vec![0.0, 1.0]]), Err(Error::NonSymmetric));
    }
}
