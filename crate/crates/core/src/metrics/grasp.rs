//! Content complexity of code segments and the per-block complexity
//! profile graph (CPG). Logarithms are natural.

use crate::error::{Error, Result};
use crate::model::Code;
use crate::structure::decompose;

/// Per-letter weights. Logic letters (`j`, `k`, `l`) weigh 1.5, flow letters
/// (`r`, `s`, `t`) 1.3, everything else 1.0.
#[derive(Debug, Clone, PartialEq)]
pub struct GraspWeightTable {
    weights: [f64; 26],
}

impl Default for GraspWeightTable {
    fn default() -> Self {
        let mut weights = [1.0; 26];
        for l in [b'j', b'k', b'l'] {
            weights[(l - b'a') as usize] = 1.5;
        }
        for l in [b'r', b's', b't'] {
            weights[(l - b'a') as usize] = 1.3;
        }
        Self { weights }
    }
}

impl GraspWeightTable {
    pub fn with_weight(mut self, letter: char, weight: f64) -> Result<Self> {
        if !letter.is_ascii_lowercase() || !(weight > 0.0) {
            return Err(Error::domain(format!("bad weight {weight} for {letter:?}")));
        }
        self.weights[(letter as u8 - b'a') as usize] = weight;
        Ok(self)
    }

    pub fn weight(&self, letter: u8) -> f64 {
        self.weights[(letter - b'a') as usize]
    }
}

/// `ln(Σ weight(letter))` over a non-empty segment.
pub fn grasp_content(segment: &[u8], table: &GraspWeightTable) -> Result<f64> {
    if segment.is_empty() {
        return Err(Error::domain("empty segment"));
    }
    if let Some(&b) = segment.iter().find(|b| !b.is_ascii_lowercase()) {
        return Err(Error::domain(format!("letter {:?} has no weight", b as char)));
    }
    Ok(segment.iter().map(|&b| table.weight(b)).sum::<f64>().ln())
}

/// Content complexity of each basic block, in program order.
pub fn grasp_profile(code: &Code, table: &GraspWeightTable) -> Result<Vec<f64>> {
    let d = decompose(code)?;
    d.units(1)
        .iter()
        .map(|r| grasp_content(&code.as_bytes()[r.clone()], table))
        .collect()
}
