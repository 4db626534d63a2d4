//! Hierarchical measures: spaghetti length, reuse, redundancy, brittleness
//! and one-point-mutation robustness.
//!
//! The behavioral measures work by ablation: a subunit is removed by
//! deleting its letters, and the shortened code must still be a member of
//! the function class for the removal to count as harmless.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Code, FunctionClassSpec};
use crate::structure::{check_level, decompose, subunit_keys_within, LevelDecomposition, LEVELS};
use crate::vm::{class_membership, is_member, Membership};

/// Largest subunit count for which the maximal removable subset is found
/// by exhaustive search.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spaghetti {
    /// `S_k` for k = 1, 2, 3; `None` when the level has no subunits.
    pub per_level: [Option<f64>; LEVELS - 1],
    /// `max_k S_k`.
    pub overall: f64,
}

pub fn spaghetti(decomp: &LevelDecomposition) -> Spaghetti {
    let mut per_level = [None; LEVELS - 1];
    for k in 1..LEVELS {
        per_level[k - 1] = spaghetti_of_counts(decomp.counts(k));
    }
    let overall = per_level.iter().flatten().copied().fold(0.0, f64::max);
    Spaghetti { per_level, overall }
}

/// `max η / Σ η`.
pub fn spaghetti_of_counts(counts: &[usize]) -> Option<f64> {
    let total: usize = counts.iter().sum();
    let max = counts.iter().copied().max()?;
    (total > 0).then(|| max as f64 / total as f64)
}

/// `R^i_k`: the largest number, over level-k units, of distinct subunit
/// strings used at least `i` times within the unit, divided by `s_k`.
pub fn reuse(decomp: &LevelDecomposition, i: usize, k: usize) -> Result<f64> {
    check_level(k)?;
    if i == 0 {
        return Err(Error::domain("reuse threshold must be at least 1"));
    }
    let s_k: usize = decomp.counts(k).iter().sum();
    if s_k == 0 {
        return Ok(0.0);
    }
    let mut best = 0;
    for unit in 0..decomp.unit_count(k) {
        let keys = subunit_keys_within(decomp, k, unit)?;
        best = best.max(keys.values().filter(|&&m| m >= i).count());
    }
    Ok(best as f64 / s_k as f64)
}

/// Multiplicity-based alternative reading of reuse: the largest number of
/// times a single subunit string repeats within a level-k unit, over `s_k`.
/// Only counts repeats reaching the threshold `i`.
pub fn reuse_max_multiplicity(decomp: &LevelDecomposition, i: usize, k: usize) -> Result<f64> {
    check_level(k)?;
    let s_k: usize = decomp.counts(k).iter().sum();
    if s_k == 0 {
        return Ok(0.0);
    }
    let mut best = 0;
    for unit in 0..decomp.unit_count(k) {
        let keys = subunit_keys_within(decomp, k, unit)?;
        best = best.max(keys.values().copied().filter(|&m| m >= i).max().unwrap_or(0));
    }
    Ok(best as f64 / s_k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AblationOptions {
    /// Also count a subunit as destructive when removing any single
    /// instruction inside it leaves the class.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AblationReport {
    pub level: usize,
    /// Total number of subunits.
    pub n: usize,
    /// Size of the largest simultaneously removable subset found.
    pub m: usize,
    /// Indices of that subset.
    pub removable: Vec<usize>,
    /// Number of subunits whose removal destroys membership.
    pub d: usize,
    pub essential: Vec<usize>,
    /// `m` is exact (exhaustive) rather than a greedy lower bound.
    pub exact: bool,
}

impl AblationReport {
    pub fn redundancy(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.m as f64 / self.n as f64
        }
    }

    pub fn brittleness(&self) -> Result<f64> {
        if self.n == self.m {
            return Err(Error::Undefined(
                "brittleness: every subunit is removable (n = m)".into(),
            ));
        }
        Ok(self.d as f64 / (self.n - self.m) as f64)
    }

    /// Probability that deleting one random subunit keeps the code in class.
    pub fn deletion_survival(&self) -> f64 {
        if self.n == 0 {
            1.0
        } else {
            1.0 - self.d as f64 / self.n as f64
        }
    }
}

/// Letters of `code` with the units at `remove` (sorted indices into
/// `units`) deleted.
pub fn without_units(letters: &str, units: &[Range<usize>], remove: &[usize]) -> String {
    let mut out = String::with_capacity(letters.len());
    let mut skip = remove.iter().peekable();
    for (i, r) in units.iter().enumerate() {
        if skip.peek() == Some(&&i) {
            skip.next();
            continue;
        }
        out.push_str(&letters[r.clone()]);
    }
    out
}

fn require_member(code: &Code, spec: &FunctionClassSpec) -> Result<()> {
    match class_membership(code, spec) {
        Membership::Member => Ok(()),
        Membership::NonMember => Err(Error::NotMember),
        Membership::ErrorClass => Err(Error::ErrorClass(code.id().to_owned())),
    }
}

fn mask_indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Ablation study of the level-(k-1) subunits of a member code.
pub fn ablate(
    code: &Code,
    spec: &FunctionClassSpec,
    k: usize,
    options: AblationOptions,
) -> Result<AblationReport> {
    check_level(k)?;
    require_member(code, spec)?;
    let decomp = decompose(code)?;
    let letters = code.letters();
    let units = decomp.units(k - 1);
    let n = units.len();
    let survives = |remove: &[usize]| is_member(&without_units(letters, units, remove), spec);

    let (removable, exact) = if n <= EXHAUSTIVE_LIMIT {
        // scan by decreasing cardinality; the first hit is maximal
        let mut by_size: Vec<u32> = (0..1u32 << n).collect();
        by_size.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        let best = by_size
            .into_iter()
            .map(|m| mask_indices(m, n))
            .find(|set| survives(set))
            .unwrap_or_default();
        (best, true)
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(units[i].len()), i));
        let mut chosen: Vec<usize> = Vec::new();
        for i in order {
            let mut trial = chosen.clone();
            trial.push(i);
            trial.sort_unstable();
            if survives(&trial) {
                chosen = trial;
            }
        }
        (chosen, false)
    };

    let mut essential = Vec::new();
    for i in 0..n {
        let mut destroys = !survives(&[i]);
        if !destroys && options.strict && k >= 2 {
            let level0 = decomp.units(0);
            let span = &units[i];
            destroys = level0
                .iter()
                .enumerate()
                .filter(|(_, r)| r.start >= span.start && r.end <= span.end)
                .any(|(c, _)| !is_member(&without_units(letters, level0, &[c]), spec));
        }
        if destroys {
            essential.push(i);
        }
    }

    Ok(AblationReport {
        level: k,
        n,
        m: removable.len(),
        removable,
        d: essential.len(),
        essential,
        exact,
    })
}

/// `Red = m / n` with its ablation report.
pub fn redundancy(code: &Code, spec: &FunctionClassSpec, k: usize) -> Result<(f64, AblationReport)> {
    let report = ablate(code, spec, k, AblationOptions::default())?;
    Ok((report.redundancy(), report))
}

/// `Britt = d / (n - m)` with its ablation report.
pub fn brittleness(
    code: &Code,
    spec: &FunctionClassSpec,
    k: usize,
    options: AblationOptions,
) -> Result<(f64, AblationReport)> {
    let report = ablate(code, spec, k, options)?;
    Ok((report.brittleness()?, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub mutants: usize,
    pub surviving: usize,
}

impl RobustnessReport {
    pub fn value(&self) -> f64 {
        if self.mutants == 0 {
            0.0
        } else {
            self.surviving as f64 / self.mutants as f64
        }
    }
}

/// Fraction of all single-letter substitutions that stay in the class.
pub fn robustness(code: &Code, spec: &FunctionClassSpec, alphabet: &Alphabet) -> Result<RobustnessReport> {
    require_member(code, spec)?;
    let mut buf: Vec<u8> = code.as_bytes().to_vec();
    let mut mutants = 0;
    let mut surviving = 0;
    for pos in 0..buf.len() {
        let original = buf[pos];
        for &l in alphabet.letters() {
            let l = l as u8;
            if l == original {
                continue;
            }
            buf[pos] = l;
            mutants += 1;
            let s = std::str::from_utf8(&buf).expect("ascii letters");
            if is_member(s, spec) {
                surviving += 1;
            }
        }
        buf[pos] = original;
    }
    Ok(RobustnessReport { mutants, surviving })
}
