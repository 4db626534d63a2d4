use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::model::{Alphabet, Code, FunctionClassSpec};
use crate::vm::is_member;

/// A single-letter edit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edit {
    Substitute { pos: usize, letter: char },
    Insert { pos: usize, letter: char },
    Delete { pos: usize },
}

impl Edit {
    pub fn apply(&self, letters: &str) -> String {
        let mut chars: Vec<char> = letters.chars().collect();
        match *self {
            Edit::Substitute { pos, letter } => chars[pos] = letter,
            Edit::Insert { pos, letter } => chars.insert(pos, letter),
            Edit::Delete { pos } => {
                chars.remove(pos);
            }
        }
        chars.into_iter().collect()
    }

    /// Uniform over edit kinds, then position and letter. Substitutions
    /// always change the letter.
    pub fn random(letters: &str, alphabet: &Alphabet, rng: &mut impl Rng) -> Edit {
        let len = letters.chars().count();
        let pick = |rng: &mut _| *alphabet.letters().choose(rng).expect("alphabet is non-empty");
        match (rng.gen_range(0..3), len) {
            (0, 1..) => {
                let pos = rng.gen_range(0..len);
                let old = letters.chars().nth(pos);
                let letter = loop {
                    let c = pick(rng);
                    if Some(c) != old || alphabet.size() == 1 {
                        break c;
                    }
                };
                Edit::Substitute { pos, letter }
            }
            (2, 1..) => Edit::Delete {
                pos: rng.gen_range(0..len),
            },
            _ => Edit::Insert {
                pos: rng.gen_range(0..=len),
                letter: pick(rng),
            },
        }
    }
}

impl fmt::Display for Edit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edit::Substitute { pos, letter } => write!(f, "sub {pos} {letter}"),
            Edit::Insert { pos, letter } => write!(f, "ins {pos} {letter}"),
            Edit::Delete { pos } => write!(f, "del {pos}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeutralVariants {
    pub variants: Vec<Code>,
    /// Fewer than `count` variants were found within the attempt budget.
    pub partial: bool,
    pub attempts: usize,
}

/// Collects `count` distinct class-preserving codes. Each is one random
/// edit away from the original or from an earlier variant.
pub fn neutral_variants(code: &Code, spec: &FunctionClassSpec, count: usize, seed: u64) -> Result<NeutralVariants> {
    if !is_member(code.letters(), spec) {
        return Err(Error::NotMember);
    }
    let alphabet = Alphabet::genome();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<String> = HashSet::from([code.letters().to_string()]);
    let mut pool: Vec<String> = vec![code.letters().to_string()];
    let budget = count.saturating_mul(1000);
    let mut attempts = 0;
    while pool.len() <= count && attempts < budget {
        attempts += 1;
        let base = &pool[rng.gen_range(0..pool.len())];
        let candidate = Edit::random(base, &alphabet, &mut rng).apply(base);
        if seen.contains(&candidate) || !is_member(&candidate, spec) {
            continue;
        }
        seen.insert(candidate.clone());
        pool.push(candidate);
    }
    let variants = pool
        .into_iter()
        .skip(1)
        .enumerate()
        .map(|(i, l)| Code::new(format!("{}~{i}", code.id()), l))
        .collect::<Result<Vec<_>>>()?;
    Ok(NeutralVariants {
        partial: variants.len() < count,
        variants,
        attempts,
    })
}
