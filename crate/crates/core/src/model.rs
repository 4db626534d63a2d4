//! Core domain types: alphabets, codes, function classes, profiles and norms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Step budget used when a function class does not say otherwise.
pub const DEFAULT_STEP_CAP: u64 = 20_000;

/// Ordered set of single-letter symbols a code is written in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 2 letters, got {}",
                letters.len()
            )));
        }
        for (i, &c) in letters.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidAlphabet(format!(
                    "{c:?} is not a lowercase latin letter"
                )));
            }
            if letters[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter {c:?}")));
            }
        }
        Ok(Self { letters })
    }

    /// The instruction alphabet `a..=t` of the genome language.
    pub fn genome() -> Self {
        Self {
            letters: ('a'..='t').collect(),
        }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    /// λ, the number of letters.
    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::genome()
    }
}

/// A finite, non-empty letter string together with a label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Code {
    id: String,
    letters: String,
}

impl Code {
    /// Builds a code over the genome alphabet.
    pub fn new(id: impl Into<String>, letters: impl Into<String>) -> Result<Self> {
        Self::with_alphabet(id, letters, &Alphabet::genome())
    }

    pub fn with_alphabet(
        id: impl Into<String>,
        letters: impl Into<String>,
        alphabet: &Alphabet,
    ) -> Result<Self> {
        let letters = letters.into();
        if letters.is_empty() {
            return Err(Error::domain("a code must contain at least one letter"));
        }
        if let Some((position, letter)) = letters.chars().enumerate().find(|(_, c)| !alphabet.contains(*c)) {
            return Err(Error::InvalidLetter { letter, position });
        }
        Ok(Self {
            id: id.into(),
            letters,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.letters.as_bytes()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters)
    }
}

/// A function given as a finite input/output table, defining the class
/// of codes that reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionClassSpec {
    domain: Vec<Vec<u32>>,
    expected: Vec<Vec<u32>>,
    step_cap: u64,
}

impl FunctionClassSpec {
    pub fn new(domain: Vec<Vec<u32>>, expected: Vec<Vec<u32>>, step_cap: u64) -> Result<Self> {
        if domain.is_empty() {
            return Err(Error::InvalidSpec("empty input domain".into()));
        }
        let arity = domain[0].len();
        if let Some(i) = domain.iter().position(|t| t.len() != arity) {
            return Err(Error::InvalidSpec(format!(
                "input tuple {i} has arity {}, expected {arity}",
                domain[i].len()
            )));
        }
        if expected.len() != domain.len() {
            return Err(Error::InvalidSpec(format!(
                "{} expected outputs for {} inputs",
                expected.len(),
                domain.len()
            )));
        }
        if step_cap == 0 {
            return Err(Error::InvalidSpec("step cap must be positive".into()));
        }
        Ok(Self {
            domain,
            expected,
            step_cap,
        })
    }

    pub fn domain(&self) -> &[Vec<u32>] {
        &self.domain
    }

    pub fn expected(&self) -> &[Vec<u32>] {
        &self.expected
    }

    pub fn step_cap(&self) -> u64 {
        self.step_cap
    }

    pub fn arity(&self) -> usize {
        self.domain[0].len()
    }

    /// The same function restricted to the domain points at `indices`.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let domain = indices
            .iter()
            .map(|&i| self.domain.get(i).cloned())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidSpec("restriction index out of range".into()))?;
        let expected = indices.iter().map(|&i| self.expected[i].clone()).collect();
        Self::new(domain, expected, self.step_cap)
    }
}

/// The normalized measure vector μ(code) ∈ [0,1]ⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    values: Vec<f64>,
    names: Vec<String>,
}

impl Profile {
    pub fn new(values: Vec<f64>, names: Vec<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("a profile needs at least one measure"));
        }
        if values.len() != names.len() {
            return Err(Error::domain(format!(
                "{} values for {} measure names",
                values.len(),
                names.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::domain(format!(
                "component {} ({}) = {v} is outside [0,1]",
                i, names[i]
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate measure name {n}")));
            }
        }
        Ok(Self { values, names })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Multiplies every component by `k ∈ [0,1]`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * k).collect(), self.names.clone())
    }
}

/// Choice of p for the p-norm; defaults to the Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    p: f64,
}

impl NormSpec {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::domain(format!("norm exponent p = {p} must be >= 1")));
        }
        Ok(Self { p })
    }

    pub fn euclidean() -> Self {
        Self { p: 2.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        p_norm_unchecked(v, self.p)
    }
}

impl Default for NormSpec {
    fn default() -> Self {
        Self::euclidean()
    }
}

/// Maps `[0, ∞)` onto `[0, 1)` via `x / (1 + x)`.
pub fn normalize_unbounded(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("cannot normalize negative value {x}")));
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(x / (1.0 + x))
}

/// `(Σ|vᵢ|ᵖ)^(1/p)`.
pub fn p_norm(v: &[f64], spec: NormSpec) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::domain("norm of an empty vector"));
    }
    if !(spec.p >= 1.0) {
        return Err(Error::domain(format!("norm exponent p = {} must be >= 1", spec.p)));
    }
    Ok(p_norm_unchecked(v, spec.p))
}

fn p_norm_unchecked(v: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return v.iter().map(|x| x.abs()).sum();
    }
    if p == 2.0 {
        return v.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    if p.is_infinite() {
        return v.iter().fold(0.0, |m, x| m.max(x.abs()));
    }
    // scale by the largest magnitude so large p does not overflow
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * v.iter().map(|x| (x.abs() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
}
