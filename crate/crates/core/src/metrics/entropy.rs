use std::collections::HashMap;

use crate::error::{Error, Result};

/// Normalized block entropy `H_n / n` of a letter sequence, where `H_n` is
/// the Shannon entropy (log base λ) of the empirical distribution of the
/// `len - n + 1` overlapping blocks of length `n`.
pub fn block_entropy(letters: &[u8], n: usize, lambda: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("block length must be at least 1"));
    }
    if n > letters.len() {
        return Err(Error::domain(format!(
            "block length {n} exceeds sequence length {}",
            letters.len()
        )));
    }
    if lambda < 2 {
        return Err(Error::domain("alphabet size must be at least 2"));
    }
    let windows = letters.len() - n + 1;
    let mut counts: HashMap<&[u8], usize> = HashMap::new();
    for w in letters.windows(n) {
        *counts.entry(w).or_default() += 1;
    }
    // fixed summation order
    let mut freq: Vec<usize> = counts.into_values().collect();
    freq.sort_unstable();
    let total = windows as f64;
    let ln_lambda = (lambda as f64).ln();
    let h: f64 = freq
        .iter()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln() / ln_lambda
        })
        .sum();
    // -0.0 for a single block kind
    Ok((h / n as f64).max(0.0))
}
