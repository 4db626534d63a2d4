//! Principal components of a profile cloud via cyclic Jacobi rotations.

use serde::{Deserialize, Serialize};

use crate::error::{Degeneracy, Error, Result};
use crate::model::Profile;

/// Sweeps stop once the largest off-diagonal entry is below this fraction
/// of the matrix's Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pca {
    pub mean: Vec<f64>,
    /// Leading eigenvalues, descending (at most two).
    pub eigenvalues: Vec<f64>,
    /// Matching unit eigenvectors; the largest-magnitude component is positive.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Centered profiles projected onto the leading two components.
    pub projections: Vec<[f64; 2]>,
}

/// Sample covariance (divisor N − 1) of the rows.
pub fn covariance(rows: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if rows.len() < 2 {
        return Err(Error::domain("PCA needs at least two profiles"));
    }
    let n = rows[0].len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::domain("profiles must share a non-zero dimension"));
    }
    let count = rows.len() as f64;
    let mut mean = vec![0.0; n];
    for r in rows {
        for (m, v) in mean.iter_mut().zip(r) {
            *m += v / count;
        }
    }
    let mut cov = vec![vec![0.0; n]; n];
    for r in rows {
        for i in 0..n {
            for j in 0..n {
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
            }
        }
    }
    for row in &mut cov {
        for c in row.iter_mut() {
            *c /= count - 1.0;
        }
    }
    Ok((mean, cov))
}

/// All eigenpairs of a symmetric matrix, eigenvalues descending.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::domain("matrix must be square"));
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let tol = OFF_DIAGONAL_TOL * frob;
    for _ in 0..MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].abs())
            .fold(0.0, f64::max);
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&i| orient((0..n).map(|k| v[k][i]).collect()))
        .collect();
    Ok((values, vectors))
}

/// Flips the sign so the largest-magnitude component (first on ties) is positive.
fn orient(mut vec: Vec<f64>) -> Vec<f64> {
    let mut best = 0;
    for (i, x) in vec.iter().enumerate() {
        if x.abs() > vec[best].abs() {
            best = i;
        }
    }
    if vec.get(best).is_some_and(|x| *x < 0.0) {
        for x in &mut vec {
            *x = -*x;
        }
    }
    vec
}

pub fn pca_rows(rows: &[Vec<f64>]) -> Result<Pca> {
    let (mean, cov) = covariance(rows)?;
    if cov.iter().flatten().all(|x| *x == 0.0) {
        return Err(Error::Degenerate(Degeneracy::ZeroCovariance));
    }
    let (mut values, mut vectors) = jacobi_eigen(&cov)?;
    values.truncate(2);
    vectors.truncate(2);
    let projections = rows
        .iter()
        .map(|r| {
            let mut out = [0.0; 2];
            for (o, ev) in out.iter_mut().zip(&vectors) {
                *o = ev.iter().zip(r.iter().zip(&mean)).map(|(e, (x, m))| e * (x - m)).sum();
            }
            out
        })
        .collect();
    Ok(Pca {
        mean,
        eigenvalues: values,
        eigenvectors: vectors,
        projections,
    })
}

pub fn pca(profiles: &[Profile]) -> Result<Pca> {
    let rows: Vec<Vec<f64>> = profiles.iter().map(|p| p.values().to_vec()).collect();
    pca_rows(&rows)
}
