use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Code, FunctionClassSpec, NormSpec, Profile};
use crate::registry::{build_profile, AnalysisContext, MeasureRegistry};
use crate::vm::is_member;

use super::neutral::Edit;

/// After fruitless batches, candidates may chain up to this many further
/// edits; only the end result has to stay in class.
const MAX_EXTRA_EDITS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslateOptions {
    /// Stop once ‖v‖ is at or below this.
    pub delta_target: f64,
    /// Maximum number of candidate edits evaluated.
    pub budget: usize,
    pub seed: u64,
    /// Candidates sampled per iteration before picking the best.
    pub batch: usize,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        Self {
            delta_target: 0.05,
            budget: 10_000,
            seed: 0,
            batch: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationStep {
    /// v before the edit.
    pub v: Vec<f64>,
    pub m_star: usize,
    pub v_m: f64,
    pub edit: String,
    pub norm_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationTrace {
    pub steps: Vec<TranslationStep>,
    pub initial_norm: f64,
    /// ‖v‖ for the returned code.
    pub final_delta: f64,
    pub converged: bool,
    pub evaluations: usize,
    pub final_letters: String,
    /// w⁺ of B against the original code; zero if they already agree.
    pub w_plus: Vec<f64>,
    /// E(Z) for Z = ν_w(b) − ν_w(a′), by enumeration over B.
    pub expected_z: f64,
    /// ‖v‖ / #B.
    pub bound: f64,
}

impl TranslationTrace {
    pub fn bound_holds(&self) -> bool {
        self.expected_z.abs() <= self.bound + 1e-12
    }
}

fn discrepancy(a: &Profile, bs: &[Profile]) -> Vec<f64> {
    let mut v = vec![0.0; a.len()];
    for b in bs {
        for (vi, (x, y)) in v.iter_mut().zip(b.values().iter().zip(a.values())) {
            *vi += x - y;
        }
    }
    v
}

fn argmax_abs(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

/// Rewrites `a` by class-preserving single edits until its profile is
/// within `delta_target` of B in the sense ‖Σ_b (μ(b) − μ(a))‖ ≤ δ.
///
/// Each iteration targets the dominating component m* of v and accepts,
/// among sampled member edits that shrink ‖v‖ (single edits, or short edit
/// chains once single edits stop helping), the one whose μ_{m*} lands
/// closest to μ_{m*}(a) + v_{m*}/#B.
pub fn translate(
    a: &Code,
    b: &[Code],
    registry: &MeasureRegistry,
    ctx: &AnalysisContext,
    spec: &FunctionClassSpec,
    opts: &TranslateOptions,
) -> Result<(Code, TranslationTrace)> {
    if b.is_empty() {
        return Err(Error::domain("translation needs a non-empty B"));
    }
    if !is_member(a.letters(), spec) || b.iter().any(|c| !is_member(c.letters(), spec)) {
        return Err(Error::NotMember);
    }
    let norm = NormSpec::euclidean();
    let nb = b.len() as f64;
    let b_profiles = b
        .iter()
        .map(|c| build_profile(c, registry, ctx))
        .collect::<Result<Vec<_>>>()?;

    let mut current = a.letters().to_string();
    let mut mu = build_profile(a, registry, ctx)?;
    let mut v = discrepancy(&mu, &b_profiles);
    let initial_norm = norm.norm(&v);
    let mut current_norm = initial_norm;
    let w_plus: Vec<f64> = if initial_norm > 0.0 {
        v.iter().map(|x| x / initial_norm).collect()
    } else {
        vec![0.0; v.len()]
    };

    let alphabet = Alphabet::genome();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut steps = Vec::new();
    let mut evaluations = 0;
    let batch = opts.batch.max(1);
    let mut stagnant = 0usize;
    while current_norm > opts.delta_target && evaluations < opts.budget {
        let m_star = argmax_abs(&v);
        let target = mu.values()[m_star] + v[m_star] / nb;
        let mut best: Option<(f64, f64, String, String, Profile, Vec<f64>)> = None;
        for _ in 0..batch {
            if evaluations >= opts.budget {
                break;
            }
            evaluations += 1;
            let depth = rng.gen_range(1..=1 + stagnant.min(MAX_EXTRA_EDITS));
            let mut letters = current.clone();
            let mut edits = Vec::with_capacity(depth);
            for _ in 0..depth {
                let edit = Edit::random(&letters, &alphabet, &mut rng);
                letters = edit.apply(&letters);
                edits.push(edit.to_string());
            }
            if !is_member(&letters, spec) {
                continue;
            }
            let Ok(code) = Code::new(a.id(), letters.as_str()) else {
                continue;
            };
            let Ok(p) = build_profile(&code, registry, ctx) else {
                continue;
            };
            let v2 = discrepancy(&p, &b_profiles);
            let n2 = norm.norm(&v2);
            if n2 >= current_norm {
                continue;
            }
            let score = (p.values()[m_star] - target).abs();
            if best.as_ref().map_or(true, |(s, n, ..)| (score, n2) < (*s, *n)) {
                best = Some((score, n2, edits.join("; "), letters, p, v2));
            }
        }
        if let Some((_, n2, edit, letters, p, v2)) = best {
            steps.push(TranslationStep {
                v: v.clone(),
                m_star,
                v_m: v[m_star],
                edit,
                norm_after: n2,
            });
            stagnant = 0;
            current = letters;
            mu = p;
            v = v2;
            current_norm = n2;
        } else {
            stagnant += 1;
        }
    }

    let nu = |p: &Profile| -> f64 { w_plus.iter().zip(p.values()).map(|(w, x)| w * x).sum() };
    let expected_z = b_profiles.iter().map(|p| nu(p) - nu(&mu)).sum::<f64>() / nb;
    let final_code = Code::new(a.id(), current.as_str())?;
    let trace = TranslationTrace {
        steps,
        initial_norm,
        final_delta: current_norm,
        converged: current_norm <= opts.delta_target,
        evaluations,
        final_letters: current,
        w_plus,
        expected_z,
        bound: current_norm / nb,
    };
    Ok((final_code, trace))
}
