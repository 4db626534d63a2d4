//! Single-linkage clustering of codes on their scalar style score.

use crate::error::{Error, Result};
use crate::model::Profile;

use super::fingerprint::nu;

/// Merges the two closest clusters (smallest gap in score between any two
/// members) until `k` remain. Ties go to the lowest cluster pair. Labels
/// are numbered in order of each cluster's first member.
pub fn cluster_scores(scores: &[f64], k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > scores.len() {
        return Err(Error::domain(format!(
            "cannot form {k} clusters from {} codes",
            scores.len()
        )));
    }
    let mut clusters: Vec<Vec<usize>> = (0..scores.len()).map(|i| vec![i]).collect();
    while clusters.len() > k {
        let mut best = (f64::INFINITY, 0, 1);
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let d = clusters[i]
                    .iter()
                    .flat_map(|&a| clusters[j].iter().map(move |&b| (scores[a] - scores[b]).abs()))
                    .fold(f64::INFINITY, f64::min);
                if d < best.0 {
                    best = (d, i, j);
                }
            }
        }
        let (_, i, j) = best;
        let moved = clusters.remove(j);
        clusters[i].extend(moved);
        clusters[i].sort_unstable();
    }
    let mut labels = vec![0; scores.len()];
    for (label, members) in clusters.iter().enumerate() {
        for &m in members {
            labels[m] = label;
        }
    }
    Ok(labels)
}

/// Clusters profiles by `ν_w`.
pub fn cluster(profiles: &[Profile], w: &[f64], k: usize) -> Result<Vec<usize>> {
    let scores = profiles.iter().map(|p| nu(w, p)).collect::<Result<Vec<_>>>()?;
    cluster_scores(&scores, k)
}

/// Fraction of items whose cluster's majority truth label matches their own.
pub fn purity(labels: &[usize], truth: &[usize]) -> f64 {
    if labels.is_empty() || labels.len() != truth.len() {
        return 0.0;
    }
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let t = truth.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0usize; t]; k];
    for (&l, &g) in labels.iter().zip(truth) {
        table[l][g] += 1;
    }
    let hits: usize = table.iter().map(|row| row.iter().copied().max().unwrap_or(0)).sum();
    hits as f64 / labels.len() as f64
}
